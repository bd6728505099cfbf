use serde::Serialize;
use thiserror::Error;

use crate::certify::min_radius;
use crate::interval::{
    eval_jacobian_interval, eval_system_interval, point_mul_vec, Interval, IntervalBox, IntervalMatrix,
};
use crate::linalg::{Lu, PIVOT_THRESHOLD};
use crate::poly::PolySystem;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KrawczykError {
    #[error("midpoint Jacobian is singular")]
    SingularMid,
    #[error("box is not finite")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("box has no coordinate of positive width that can be split")]
pub struct CannotDivide;

/// Moore form of the Krawczyk operator:
/// `K(X) = m - Y f(m) + (I - Y F'(X)) [-r, r]`, `m = mid X`, `r = rad X`,
/// `Y = (mid F'(X))^-1`.
///
/// `f(m)` is enclosed by evaluating on the point box, so the result encloses
/// every zero of `F` in `X` despite rounding.
pub fn krawczyk_image(sys: &PolySystem, x: &IntervalBox) -> Result<IntervalBox, KrawczykError> {
    if !x.is_finite() {
        return Err(KrawczykError::NonFinite);
    }
    let m = x.mid();
    let r = x.rad();
    let jac = eval_jacobian_interval(sys, x);
    let y = Lu::factor(&jac.mid_matrix(), PIVOT_THRESHOLD)
        .map_err(|_| KrawczykError::SingularMid)?
        .inverse();
    let fm = eval_system_interval(sys, &IntervalBox::from_point(&m));
    let yf = point_mul_vec(&y, &fm);
    let residual = IntervalMatrix::left_mul_point(&y, &jac).identity_minus();
    let spread: Vec<Interval> = r.iter().map(|&ri| Interval::from_bounds(-ri, ri)).collect();
    let rs = residual.mul_vec(&spread);
    let out: Vec<Interval> = (0..x.dim()).map(|i| Interval::point(m[i]) - yf[i] + rs[i]).collect();
    let k = IntervalBox::new(out).expect("same dimension as x");
    if k.is_finite() {
        Ok(k)
    } else {
        Err(KrawczykError::NonFinite)
    }
}

/// Splits the widest coordinate (lowest index on ties) at its midpoint.
pub fn divide(x: &IntervalBox) -> Result<(IntervalBox, IntervalBox), CannotDivide> {
    divide_at(x, 0.5)
}

/// Splits the widest coordinate at `lo + frac * width`.
pub fn divide_at(x: &IntervalBox, frac: f64) -> Result<(IntervalBox, IntervalBox), CannotDivide> {
    let (idx, widest) =
        x.components().iter().enumerate().fold(
            (0, x.get(0)),
            |(bi, b), (i, c)| {
                if c.width() > b.width() {
                    (i, *c)
                } else {
                    (bi, b)
                }
            },
        );
    let cut = if frac == 0.5 {
        widest.mid()
    } else {
        widest.lo() + frac * (widest.hi() - widest.lo())
    };
    if !(widest.lo() < cut && cut < widest.hi()) {
        return Err(CannotDivide);
    }
    Ok((
        x.with_component(idx, Interval::from_bounds(widest.lo(), cut)),
        x.with_component(idx, Interval::from_bounds(cut, widest.hi())),
    ))
}

/// Limits on the bisection search inside [`krawczyk_verify`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BisectionBudget {
    /// Deepest allowed chain of bisections.
    pub max_depth: usize,
    /// A box is not split further once its widest coordinate is below this
    /// many ulps of its center's largest component.
    pub min_width_ulps: f64,
    /// Total number of boxes examined before giving up.
    pub max_boxes: usize,
    /// Krawczyk iterations on a single box before it is split.
    pub max_iterations: usize,
}

impl Default for BisectionBudget {
    fn default() -> Self {
        BisectionBudget {
            max_depth: 64,
            min_width_ulps: 4.0,
            max_boxes: 10_000,
            max_iterations: 64,
        }
    }
}

impl BisectionBudget {
    fn min_width(&self, x: &IntervalBox) -> f64 {
        min_radius(&x.mid()) * self.min_width_ulps / 4.0
    }
}

/// A box proven to contain exactly one zero: `image = K(region)` lies
/// strictly inside `region`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verified {
    pub region: IntervalBox,
    pub image: IntervalBox,
    pub depth: usize,
}

/// Everything [`krawczyk_verify`] learned about a box.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerifyOutcome {
    pub verified: Vec<Verified>,
    /// Pieces that could be neither certified nor excluded.
    pub undecided: Vec<IntervalBox>,
    pub krawczyk_steps: usize,
    pub bisections: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerifyStatus {
    Verified,
    NoRoot,
    Undecided,
}

impl VerifyOutcome {
    pub fn status(&self) -> VerifyStatus {
        if !self.verified.is_empty() {
            VerifyStatus::Verified
        } else if self.undecided.is_empty() {
            VerifyStatus::NoRoot
        } else {
            VerifyStatus::Undecided
        }
    }
}

/// Iterates `X <- K(X) ∩ X` until `K(X)` lies strictly inside `X` (a unique
/// zero), the intersection is empty (no zero), or progress stalls, in which
/// case the box is bisected and both halves are examined.
///
/// A `K(X)` that is contained in `X` but touches its boundary only proves
/// existence; `X` is then inflated by a tenth of its radius and retested once.
pub fn krawczyk_verify(sys: &PolySystem, x: &IntervalBox, budget: &BisectionBudget) -> VerifyOutcome {
    let mut out = VerifyOutcome::default();
    let mut stack = vec![(x.clone(), 0usize)];
    let mut examined = 0;
    while let Some((mut x, depth)) = stack.pop() {
        examined += 1;
        if examined > budget.max_boxes {
            out.undecided.push(x);
            out.undecided.extend(stack.drain(..).map(|(b, _)| b));
            break;
        }
        let mut inflated = false;
        let mut iterations = 0;
        loop {
            iterations += 1;
            out.krawczyk_steps += 1;
            let k = match krawczyk_image(sys, &x) {
                Ok(k) => k,
                Err(KrawczykError::SingularMid) => {
                    split(x, depth, budget, &mut stack, &mut out);
                    break;
                }
                Err(KrawczykError::NonFinite) => {
                    out.undecided.push(x);
                    break;
                }
            };
            if k.is_interior(&x).expect("same dimension") {
                out.verified.push(Verified {
                    region: x,
                    image: k,
                    depth,
                });
                break;
            }
            let Some(next) = k.intersect(&x).expect("same dimension") else {
                break;
            };
            if !inflated && k.is_subset(&x).expect("same dimension") {
                inflated = true;
                let wide = x.inflate(0.1, 0.0);
                out.krawczyk_steps += 1;
                if let Ok(kw) = krawczyk_image(sys, &wide) {
                    if kw.is_interior(&wide).expect("same dimension") {
                        out.verified.push(Verified {
                            region: wide,
                            image: kw,
                            depth,
                        });
                        break;
                    }
                }
            }
            if next == x || iterations >= budget.max_iterations {
                split(x, depth, budget, &mut stack, &mut out);
                break;
            }
            x = next;
        }
    }
    out
}

fn split(
    x: IntervalBox,
    depth: usize,
    budget: &BisectionBudget,
    stack: &mut Vec<(IntervalBox, usize)>,
    out: &mut VerifyOutcome,
) {
    if depth >= budget.max_depth || x.max_width() <= budget.min_width(&x) {
        out.undecided.push(x);
        return;
    }
    match divide(&x) {
        Ok((a, b)) => {
            out.bisections += 1;
            // Popped in order: lower half first.
            stack.push((b, depth + 1));
            stack.push((a, depth + 1));
        }
        Err(CannotDivide) => out.undecided.push(x),
    }
}
