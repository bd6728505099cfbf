//! Natural interval extensions of polynomials over the canonical term list.

use super::{Interval, IntervalBox, IntervalMatrix};
use crate::poly::{PolySystem, Polynomial};

/// Encloses `{p(x) : x in X}`. Inclusion-isotone in `X`.
pub fn eval_interval(p: &Polynomial, x: &IntervalBox) -> Interval {
    assert_eq!(p.nvars(), x.dim(), "box dimension must match variable count");
    let xs = x.components();
    let mut sum = Interval::point(0.0);
    for term in p.terms() {
        let mut m = Interval::point(1.0);
        for (iv, &e) in xs.iter().zip(&term.exponents) {
            if e > 0 {
                m = m * iv.powi(e);
            }
        }
        sum = sum + m.scale(term.coefficient);
    }
    sum
}

pub fn eval_system_interval(sys: &PolySystem, x: &IntervalBox) -> Vec<Interval> {
    sys.polys().iter().map(|p| eval_interval(p, x)).collect()
}

pub fn eval_jacobian_interval(sys: &PolySystem, x: &IntervalBox) -> IntervalMatrix {
    let n = sys.dim();
    let jac = sys.jacobian();
    IntervalMatrix::from_fn(n, n, |i, j| eval_interval(&jac[i][j], x))
}

pub fn eval_hessian_interval(sys: &PolySystem, i: usize, x: &IntervalBox) -> IntervalMatrix {
    let n = sys.dim();
    let h = sys.hessian(i);
    IntervalMatrix::from_fn(n, n, |j, k| eval_interval(&h[j][k], x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_system;

    fn bx(v: &[(f64, f64)]) -> IntervalBox {
        IntervalBox::new(v.iter().map(|&(a, b)| Interval::new(a, b).unwrap()).collect()).unwrap()
    }

    #[test]
    fn natural_extension_examples() {
        let sys = parse_system("vars: x\nx^2 - 2").unwrap();
        let v = eval_interval(&sys.polys()[0], &bx(&[(1.0, 2.0)]));
        assert_eq!(v, Interval::new(-1.0, 2.0).unwrap());

        let sys = parse_system("vars: x y\nx*y\nx + y + 3").unwrap();
        let unit = bx(&[(-1.0, 1.0), (-1.0, 1.0)]);
        assert_eq!(eval_interval(&sys.polys()[0], &unit), Interval::new(-1.0, 1.0).unwrap());
    }

    #[test]
    fn constant_is_a_point() {
        let c = Polynomial::constant(3.0, 2);
        assert_eq!(eval_interval(&c, &bx(&[(-5.0, 7.0), (0.0, 1.0)])), Interval::point(3.0));
    }

    #[test]
    fn jacobian_and_hessian_enclosures() {
        let sys = parse_system("vars: x y\nx^2*y - 1\nx - y").unwrap();
        let x = bx(&[(1.0, 2.0), (3.0, 4.0)]);
        let j = eval_jacobian_interval(&sys, &x);
        // d/dx = 2xy in [6, 16], d/dy = x^2 in [1, 4]
        assert_eq!(j.get(0, 0), Interval::new(6.0, 16.0).unwrap());
        assert_eq!(j.get(0, 1), Interval::new(1.0, 4.0).unwrap());
        let h = eval_hessian_interval(&sys, 0, &x);
        assert_eq!(h.get(0, 0), Interval::new(6.0, 8.0).unwrap());
        assert_eq!(h.get(0, 1), h.get(1, 0));
        assert_eq!(h.get(1, 1), Interval::point(0.0));
    }
}
