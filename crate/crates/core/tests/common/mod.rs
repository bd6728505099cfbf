//! Test oracles that share no code with the library.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use isolat::certify::{init_width, DEFAULT_MAX_RETRIES};
use isolat::homotopy::{solve_all, TrackerConfig};
use isolat::interval::Interval;
use isolat::isolate::{real_root_isolate, Certificate, IsolateConfig};
use isolat::poly::{ComplexPoint, PolySystem, Polynomial};

pub type Q = BigRational;

pub fn q(x: f64) -> Q {
    Q::from_float(x).expect("finite")
}

#[derive(Debug, PartialEq)]
pub enum OracleError {
    ZeroPolynomial,
    NotSquarefree,
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
struct Dense(Vec<Q>);

impl Dense {
    fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Dense(c)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Dense {
        Dense::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_usize(k).unwrap())
                .collect(),
        )
    }

    fn rem(&self, d: &Dense) -> Dense {
        let mut r = self.0.clone();
        let lead = d.0.last().unwrap();
        while r.len() >= d.0.len() && !r.is_empty() {
            let shift = r.len() - d.0.len();
            let f = r.last().unwrap() / lead;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Dense::new(r)
    }
}

fn sturm_chain(p: &Dense) -> Vec<Dense> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        chain.push(Dense::new(r.0.into_iter().map(|c| -c).collect()));
    }
}

fn sign_changes(chain: &[Dense], x: &Q) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// All real roots of `sum coeffs[k] x^k`, sorted, each to about 1e-13.
///
/// Sturm's theorem counts the roots in `(a, b]` exactly in rational
/// arithmetic; bisection isolates and then refines them.
pub fn univariate_oracle(coeffs: &[f64]) -> Result<Vec<f64>, OracleError> {
    let p = Dense::new(coeffs.iter().map(|&c| q(c)).collect());
    if p.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    let chain = sturm_chain(&p);
    if chain.last().unwrap().degree() > 0 {
        return Err(OracleError::NotSquarefree);
    }
    let lead = p.0.last().unwrap();
    let cauchy =
        p.0.iter()
            .map(|c| (c / lead).abs())
            .fold(Q::zero(), |a, b| if b > a { b } else { a });
    let bound = Q::from_integer((cauchy.ceil() + Q::from_integer(1.into())).to_integer());
    let tol = q(1e-13);
    let two = Q::from_integer(2.into());

    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let count = sign_changes(&chain, &a) - sign_changes(&chain, &b);
        if count == 0 {
            continue;
        }
        if count > 1 {
            let m = (&a + &b) / &two;
            stack.push((a, m.clone()));
            stack.push((m, b));
            continue;
        }
        let (mut a, mut b) = (a, b);
        while &b - &a > tol {
            let m = (&a + &b) / &two;
            if sign_changes(&chain, &a) - sign_changes(&chain, &m) == 1 {
                b = m;
            } else {
                a = m;
            }
        }
        roots.push(((a + b) / &two).to_f64().unwrap());
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// `sum coeffs[k] x^k` as a one-variable system.
pub fn univariate_system(coeffs: &[f64]) -> PolySystem {
    let p = Polynomial::from_terms(1, coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], c)));
    PolySystem::new(vec![p], vec!["x".to_string()]).unwrap()
}

/// Exact value of `p` at a machine point.
pub fn eval_exact(p: &Polynomial, x: &[f64]) -> Q {
    let xs: Vec<Q> = x.iter().map(|&v| q(v)).collect();
    eval_rational(p, &xs)
}

pub fn eval_rational(p: &Polynomial, xs: &[Q]) -> Q {
    p.terms()
        .iter()
        .map(|t| {
            t.exponents.iter().zip(xs).fold(q(t.coefficient), |acc, (&e, v)| {
                acc * num_traits::pow(v.clone(), e as usize)
            })
        })
        .fold(Q::zero(), |a, b| a + b)
}

const BITS: usize = 200;

fn round_dyadic(x: &Q) -> Q {
    let scale = Q::from_integer(BigInt::one() << BITS);
    let k = (x * &scale + Q::new(1.into(), 2.into())).floor();
    k / scale
}

/// Newton's method in exact arithmetic for one or two unknowns, with
/// iterates rounded to 200 bits.
/// Returns the limit if the last correction is negligible.
pub fn exact_newton(sys: &PolySystem, start: &[f64]) -> Option<Vec<Q>> {
    let n = sys.dim();
    let mut x: Vec<Q> = start.iter().map(|&v| q(v)).collect();
    let tiny = Q::new(BigInt::one(), BigInt::one() << (BITS - 40));
    for _ in 0..60 {
        let f: Vec<Q> = sys.polys().iter().map(|p| eval_rational(p, &x)).collect();
        let j: Vec<Vec<Q>> = sys
            .jacobian()
            .iter()
            .map(|row| row.iter().map(|p| eval_rational(p, &x)).collect())
            .collect();
        let dx = match n {
            1 => {
                if j[0][0].is_zero() {
                    return None;
                }
                vec![&f[0] / &j[0][0]]
            }
            2 => {
                let det = &j[0][0] * &j[1][1] - &j[0][1] * &j[1][0];
                if det.is_zero() {
                    return None;
                }
                vec![
                    (&j[1][1] * &f[0] - &j[0][1] * &f[1]) / &det,
                    (&j[0][0] * &f[1] - &j[1][0] * &f[0]) / &det,
                ]
            }
            _ => unreachable!(),
        };
        x = x.iter().zip(&dx).map(|(a, d)| round_dyadic(&(a - d))).collect();
        if dx.iter().all(|d| d.abs() < tiny) {
            return Some(x);
        }
    }
    None
}

// Checks shared by the property suites and the acceptance run. Each returns
// a description of the first violation found.

#[derive(Debug, Clone, Copy)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u32),
}

/// A point of `iv` at relative position `s` in [0, 1].
pub fn sample(iv: Interval, s: f64) -> f64 {
    (iv.lo() + s * (iv.hi() - iv.lo())).clamp(iv.lo(), iv.hi())
}

pub fn in_interval(iv: Interval, x: &Q) -> bool {
    q(iv.lo()) <= *x && *x <= q(iv.hi())
}

/// The computed interval contains the exact result at every sample pair.
pub fn check_enclosure(a: Interval, b: Interval, op: Op, samples: &[(f64, f64)]) -> Result<(), String> {
    let result = match op {
        Op::Add => a + b,
        Op::Sub => a - b,
        Op::Mul => a * b,
        Op::Div => match a.checked_div(b) {
            Ok(r) => r,
            Err(_) if b.contains(0.0) => return Ok(()),
            Err(e) => return Err(format!("{a} / {b}: {e}")),
        },
        Op::Pow(k) => a.powi(k),
    };
    for &(s, t) in samples {
        let (x, y) = (q(sample(a, s)), q(sample(b, t)));
        let exact = match op {
            Op::Add => x + y,
            Op::Sub => x - y,
            Op::Mul => x * y,
            Op::Div => x / y,
            Op::Pow(k) => num_traits::pow(x, k as usize),
        };
        if !in_interval(result, &exact) {
            return Err(format!(
                "{op:?} on {a}, {b} gave {result}, missing {}",
                exact.to_f64().unwrap()
            ));
        }
    }
    Ok(())
}

/// Certified boxes contain the oracle's roots, one each, none missed.
/// Returns `Ok(false)` when the polynomial is not squarefree.
pub fn check_oracle_agreement(coeffs: &[f64], tau: f64) -> Result<bool, String> {
    let roots = match univariate_oracle(coeffs) {
        Ok(r) => r,
        Err(OracleError::NotSquarefree) => return Ok(false),
        Err(e) => return Err(format!("{e:?}")),
    };
    let sys = univariate_system(coeffs);
    let zeros = solve_all(&sys, &TrackerConfig::default());
    let report = real_root_isolate(&sys, &zeros, tau, &IsolateConfig::default());
    if !report.unverified.is_empty() {
        return Err(format!("{coeffs:?}: unverified {:?}", report.unverified));
    }
    // The oracle is accurate to ~1e-13, so allow that much slack at the edges.
    let inside = |r: f64, c: &Certificate| {
        let iv = c.region.get(0);
        iv.lo() - 1e-12 <= r && r <= iv.hi() + 1e-12
    };
    let boxes: Vec<_> = report.certificates.iter().map(|c| c.region.get(0)).collect();
    let mismatch = || format!("{coeffs:?}: boxes {boxes:?}, oracle {roots:?}");
    if report.nreal() != roots.len() {
        return Err(mismatch());
    }
    for c in &report.certificates {
        if roots.iter().filter(|&&r| inside(r, c)).count() != 1 || c.region.max_rad() > tau {
            return Err(mismatch());
        }
    }
    for &r in &roots {
        if report.certificates.iter().filter(|c| inside(r, c)).count() != 1 {
            return Err(mismatch());
        }
    }
    Ok(true)
}

/// The exact Newton limit from the refined center lies within the
/// Kantorovich radius. Returns `Ok(false)` when no radius was certified.
pub fn check_kantorovich(sys: &PolySystem, guess: &ComplexPoint) -> Result<bool, String> {
    let Ok(kd) = init_width(sys, guess, DEFAULT_MAX_RETRIES) else {
        return Ok(false);
    };
    if kd.radius > 2.0 * kd.eta || kd.h > 0.5 || kd.box_radius < kd.radius {
        return Err(format!("inconsistent data {kd:?}"));
    }
    let limit = exact_newton(sys, &kd.refined_center).ok_or("Newton diverged from a certified center")?;
    let radius = q(kd.radius);
    for (x, c) in limit.iter().zip(&kd.refined_center) {
        let d = (x - q(*c)).abs();
        if d > radius {
            return Err(format!(
                "limit at distance {} > radius {}",
                d.to_f64().unwrap(),
                kd.radius
            ));
        }
    }
    Ok(true)
}

/// Runs the pipeline and checks every emitted certificate: strict inclusion
/// on recomputation, Newton's limit inside `K(X)`, pairwise disjointness and
/// the width bound.
pub fn check_postconditions(sys: &PolySystem, tau: f64) -> Result<usize, String> {
    let zeros = solve_all(sys, &TrackerConfig::default());
    let report = real_root_isolate(sys, &zeros, tau, &IsolateConfig::default());
    let certs = &report.certificates;
    for (i, c) in certs.iter().enumerate() {
        if !c.recheck(sys) {
            return Err(format!("{:?} fails re-verification", c.region));
        }
        if !c.tolerance_met || c.region.max_rad() > tau {
            return Err(format!("{:?} wider than {tau:e}", c.region));
        }
        if certs[i + 1..]
            .iter()
            .any(|o| o.region.intersect(&c.region).unwrap().is_some())
        {
            return Err(format!("{:?} overlaps another box", c.region));
        }
        if sys.dim() <= 2 {
            let limit = exact_newton(sys, &c.region.mid()).ok_or("Newton diverged from a box center")?;
            if !limit
                .iter()
                .zip(c.image.components())
                .all(|(x, iv)| in_interval(*iv, x))
            {
                return Err(format!("Newton limit outside K({:?})", c.region));
            }
        }
    }
    Ok(certs.len())
}
