//! Initial boxes from the Kantorovich theorem, and a cheap filter for
//! candidates that are clearly not real.
//!
//! For a real approximation `x0` with `B >= ||J(x0)^-1||`,
//! `η >= ||J(x0)^-1 F(x0)||` and a Lipschitz constant `K` of `J` on the box
//! `midrad(x0, 2η)`, the condition `h = BKη <= 1/2` guarantees a unique zero
//! within `(1 - sqrt(1 - 2h)) / h · η` of `x0` (∞-norm).

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{eval_hessian_interval, eval_system_interval, round, IntervalBox};
use crate::linalg::{invert, Matrix, PIVOT_THRESHOLD};
use crate::poly::{ComplexPoint, PolySystem};

pub const DEFAULT_MAX_RETRIES: usize = 20;

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
pub enum CertifyError {
    #[error("Jacobian is singular at the candidate")]
    SingularJacobian,
    #[error("evaluation overflowed during Newton refinement")]
    NonFinite,
    #[error("h = {last_h:e} still above 1/2 after {steps} Newton steps")]
    RetriesExhausted { steps: usize, last_h: f64 },
}

/// Quantities of the Kantorovich test at the refined center.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KantorovichData {
    /// `||J(c)^-1||_∞`.
    pub b: f64,
    /// Upper bound for `||J(c)^-1 F(c)||_∞` that includes the rounding error
    /// of evaluating `F(c)`.
    pub eta: f64,
    /// Lipschitz constant of `J` on `midrad(c, 2η)`.
    pub lipschitz: f64,
    /// `B·K·η`.
    pub h: f64,
    /// `(1 - sqrt(1 - 2h)) / h · η`.
    pub radius: f64,
    /// `radius` clamped below at four ulps of the largest center component;
    /// the radius actually used to build the initial box.
    pub box_radius: f64,
    pub refined_center: Vec<f64>,
    pub newton_steps_used: usize,
}

/// Unit in the last place of `|x|`.
pub fn ulp(x: f64) -> f64 {
    let a = x.abs().max(f64::MIN_POSITIVE);
    a.next_up() - a
}

/// Four ulps of the largest component.
pub fn min_radius(center: &[f64]) -> f64 {
    4.0 * ulp(center.iter().fold(0.0_f64, |m, v| m.max(v.abs())))
}

/// `(1 - sqrt(1 - 2h)) / h · η`, in the cancellation-free form
/// `2η / (1 + sqrt(1 - 2h))`. Requires `0 <= h <= 1/2`.
pub fn kantorovich_radius(h: f64, eta: f64) -> f64 {
    debug_assert!((0.0..=0.5).contains(&h));
    2.0 * eta / (1.0 + (1.0 - 2.0 * h).max(0.0).sqrt())
}

/// `K = max_i Σ_j max_k |H_i[k][j](X)|`, rounded up.
pub fn lipschitz_constant(sys: &PolySystem, x: &IntervalBox) -> f64 {
    let n = sys.dim();
    let mut k_max = 0.0_f64;
    for i in 0..n {
        let h = eval_hessian_interval(sys, i, x);
        let mut col_sum = 0.0;
        for j in 0..n {
            let col_max = (0..n).map(|k| h.get(k, j).mag()).fold(0.0, f64::max);
            col_sum = round::add_up(col_sum, col_max);
        }
        k_max = k_max.max(col_sum);
    }
    k_max
}

fn newton_update(sys: &PolySystem, c: &[f64]) -> Result<Vec<f64>, CertifyError> {
    let jac = sys.eval_jacobian(c).map_err(|_| CertifyError::NonFinite)?;
    let f = sys.eval_real(c).map_err(|_| CertifyError::NonFinite)?;
    let step = crate::linalg::solve(&jac, &f, PIVOT_THRESHOLD).map_err(|_| CertifyError::SingularJacobian)?;
    let next: Vec<f64> = c.iter().zip(&step).map(|(a, b)| a - b).collect();
    if next.iter().all(|v| v.is_finite()) {
        Ok(next)
    } else {
        Err(CertifyError::NonFinite)
    }
}

/// `|| |J^-1| · |F(c)| ||_∞` with `|F(c)|` taken from an outward rounded
/// enclosure, so that a residual that rounds to zero still yields an honest
/// upper bound for the exact Newton step.
fn newton_step_bound(sys: &PolySystem, jinv: &Matrix<f64>, c: &[f64]) -> Result<f64, CertifyError> {
    let f = eval_system_interval(sys, &IntervalBox::from_point(c));
    let fmag: Vec<f64> = f.iter().map(|v| v.mag()).collect();
    if !fmag.iter().all(|v| v.is_finite()) {
        return Err(CertifyError::NonFinite);
    }
    let eta = (0..jinv.rows())
        .map(|i| jinv.row(i).iter().zip(&fmag).map(|(a, v)| a.abs() * v).sum::<f64>())
        .fold(0.0, f64::max);
    Ok(eta)
}

/// Newton-refines `Re(x0)` until the Kantorovich condition `h <= 1/2` holds
/// at the refined point, for at most `max_retries` refinements.
pub fn init_width(sys: &PolySystem, x0: &ComplexPoint, max_retries: usize) -> Result<KantorovichData, CertifyError> {
    let mut c = x0.re();
    let mut last_h = f64::INFINITY;
    for step in 1..=max_retries {
        c = newton_update(sys, &c)?;
        let jac = sys.eval_jacobian(&c).map_err(|_| CertifyError::NonFinite)?;
        let jinv = invert(&jac).map_err(|_| CertifyError::SingularJacobian)?;
        let b = jinv.inf_norm();
        let eta = newton_step_bound(sys, &jinv, &c)?;
        let omega = 2.0 * eta;
        let x_box = IntervalBox::midrad(&c, omega).expect("non-negative radius");
        let lipschitz = lipschitz_constant(sys, &x_box);
        let h = b * lipschitz * eta;
        if h <= 0.5 {
            let radius = kantorovich_radius(h, eta);
            let box_radius = radius.max(min_radius(&c));
            return Ok(KantorovichData {
                b,
                eta,
                lipschitz,
                h,
                radius,
                box_radius,
                refined_center: c,
                newton_steps_used: step,
            });
        }
        last_h = h;
    }
    Err(CertifyError::RetriesExhausted {
        steps: max_retries,
        last_h,
    })
}

/// `F(z)` in the ∞-norm, plus an a-priori bound on the rounding error of the
/// evaluation, so that a computed residual that cancels to zero does not hide
/// a genuine offset from the root.
fn residual_bound(sys: &PolySystem, z: &[Complex64]) -> f64 {
    sys.polys()
        .iter()
        .map(|p| {
            let v = p.eval_unchecked(z).norm();
            let k = (p.degree() as usize + p.terms().len() + 2) as f64;
            v + k * f64::EPSILON * p.abs_term_sum(z)
        })
        .fold(0.0, f64::max)
}

/// Point estimate of the distance from `z` to the nearest root:
/// `||J^-1|| ||F|| / (1 - λ ||J^-1||² ||F||)` with `λ` the Hessian column
/// bound evaluated at `z`. `None` when the Jacobian is singular or the
/// denominator is not positive.
pub fn empirical_radius(sys: &PolySystem, z: &ComplexPoint) -> Option<f64> {
    let pt = z.as_slice();
    let n = sys.dim();
    let jac: Matrix<Complex64> = sys.jacobian_unchecked(pt);
    let jinv = invert(&jac).ok()?;
    let jinv_norm = jinv.inf_norm();
    let f_norm = residual_bound(sys, pt);
    let mut lambda = 0.0_f64;
    for i in 0..n {
        let h = sys.hessian_unchecked(i, pt);
        let s: f64 = (0..n)
            .map(|j| (0..n).map(|k| h[(k, j)].norm()).fold(0.0, f64::max))
            .sum();
        lambda = lambda.max(s);
    }
    let denom = 1.0 - lambda * jinv_norm * jinv_norm * f_norm;
    let r = jinv_norm * f_norm / denom;
    (denom > 0.0 && r.is_finite()).then_some(r)
}

/// `true` when some imaginary part of `z` exceeds the empirical radius, so
/// `z` cannot be an approximation of a real root. Never discards a
/// candidate whose radius estimate is unavailable.
pub fn iscomplex(sys: &PolySystem, z: &ComplexPoint) -> bool {
    match empirical_radius(sys, z) {
        Some(r) => z.as_slice().iter().any(|c| c.im.abs() > r),
        None => false,
    }
}
