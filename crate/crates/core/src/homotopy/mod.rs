//! Approximate complex zeros of a square system.
//!
//! The default front end is a total-degree homotopy
//! `H(x, t) = γ(1 − t)·G(x) + t·F(x)` tracked from the roots of unity of
//! `G_i = x_i^{d_i} − 1` at `t = 0` to the target system at `t = 1`, with a
//! fourth-order Runge–Kutta predictor and a Newton corrector. Zeros computed
//! by any other solver can be loaded with [`load_zeros`] instead.

mod zeros_file;

use std::cmp::Ordering;

use log::{debug, warn};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{inf_norm_vec, Lu, Matrix};
use crate::poly::{ComplexPoint, PolySystem, Polynomial};

pub use zeros_file::{load_zeros, parse_zeros, LoadZerosError};

/// Relative pivot threshold for the complex solves along a path.
const TRACK_PIVOT: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StartSystemError {
    #[error("equation {0} is constant; a total-degree start system needs positive degrees")]
    ConstantEquation(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("invalid tracker configuration: {0}")]
    Invalid(&'static str),
}

/// Path tracker settings.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackerConfig {
    /// Seed the gamma constant was drawn from.
    pub seed: u64,
    /// Unit-modulus constant multiplying the start system.
    pub gamma: Complex64,
    /// First and largest step in `t`.
    pub initial_step: f64,
    pub min_step: f64,
    pub max_newton_iters_per_step: usize,
    /// Paths whose ∞-norm exceeds this are abandoned as diverging.
    pub divergence_norm: f64,
    /// Endpoints whose relative residual `|F_i| / (1 + Σ|terms of F_i|)`
    /// exceeds this in some equation are dropped.
    pub residual_tolerance: f64,
    /// Endpoints closer than this (∞-distance) are merged.
    pub endpoint_cluster_tolerance: f64,
    /// Relative size of the last Newton update for the corrector to count
    /// as converged.
    pub corrector_tolerance: f64,
    /// Number of times colliding paths are re-tracked with smaller steps.
    pub retrack_rounds: usize,
    /// Full runs tried, each with a fresh `gamma`, while paths keep stalling.
    pub gamma_attempts: usize,
}

impl TrackerConfig {
    /// Default settings with `gamma` drawn from a ChaCha stream seeded by `seed`.
    pub fn with_seed(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        TrackerConfig {
            seed,
            gamma: Complex64::from_polar(1.0, angle),
            initial_step: 0.05,
            min_step: 1e-7,
            max_newton_iters_per_step: 3,
            divergence_norm: 1e8,
            residual_tolerance: 1e-10,
            endpoint_cluster_tolerance: 1e-6,
            corrector_tolerance: 1e-9,
            retrack_rounds: 2,
            gamma_attempts: 3,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !((self.gamma.norm() - 1.0).abs() < 1e-12) {
            return Err(ConfigError::Invalid("gamma must lie on the unit circle"));
        }
        if !(0.0 < self.min_step && self.min_step <= self.initial_step && self.initial_step <= 1.0) {
            return Err(ConfigError::Invalid("need 0 < min_step <= initial_step <= 1"));
        }
        if !(self.divergence_norm > 1.0) {
            return Err(ConfigError::Invalid("divergence_norm must exceed 1"));
        }
        if !(self.residual_tolerance > 0.0 && self.endpoint_cluster_tolerance > 0.0 && self.corrector_tolerance > 0.0) {
            return Err(ConfigError::Invalid("tolerances must be positive"));
        }
        if self.max_newton_iters_per_step == 0 {
            return Err(ConfigError::Invalid("need at least one Newton iteration per step"));
        }
        Ok(())
    }
}

impl Default for TrackerConfig {
    fn default() -> Self {
        Self::with_seed(0)
    }
}

/// An approximate zero of the target system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxZero {
    pub point: ComplexPoint,
    /// `||F(point)||_∞`.
    pub residual: f64,
    pub path_id: usize,
    pub converged: bool,
}

impl ApproxZero {
    /// Recomputes the residual of `point` against `sys`. Returns `None` when
    /// the residual is not finite.
    pub fn new(sys: &PolySystem, point: ComplexPoint, path_id: usize, residual_tolerance: f64) -> Option<Self> {
        let residual = residual_norm(sys, point.as_slice());
        residual.is_finite().then(|| ApproxZero {
            converged: backward_error(sys, point.as_slice()) <= residual_tolerance,
            point,
            residual,
            path_id,
        })
    }
}

/// Wraps externally computed points, recomputing residuals against `sys`.
pub fn zeros_from_points(sys: &PolySystem, points: Vec<ComplexPoint>, residual_tolerance: f64) -> Vec<ApproxZero> {
    points
        .into_iter()
        .enumerate()
        .filter_map(|(k, p)| ApproxZero::new(sys, p, k, residual_tolerance))
        .collect()
}

/// Largest residual relative to the magnitude of the terms it sums, so that
/// zeros with large coordinates are judged at their own scale.
pub fn backward_error(sys: &PolySystem, z: &[Complex64]) -> f64 {
    sys.polys()
        .iter()
        .map(|p| p.eval_unchecked(z).norm() / (1.0 + p.abs_term_sum(z)))
        .fold(0.0, f64::max)
}

fn residual_norm(sys: &PolySystem, z: &[Complex64]) -> f64 {
    inf_norm_vec(&sys.eval_unchecked(z))
}

/// Why a path was abandoned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Divergence {
    /// `||x||_∞` exceeded the divergence norm.
    Unbounded,
    /// The step size fell below the minimum at time `t`.
    StepTooSmall { t: f64 },
}

/// Paths that stall before this time are not heading to infinity and are
/// re-tracked with finer steps.
const STALL_RETRY_BEFORE: f64 = 0.99;

#[derive(Debug, Clone, PartialEq)]
pub enum PathOutcome {
    Finished(ApproxZero),
    Diverged(Divergence),
}

/// The total-degree start system `x_i^{d_i} - 1` and its solutions.
pub fn total_degree_start(sys: &PolySystem) -> Result<(PolySystem, Vec<ComplexPoint>), StartSystemError> {
    let n = sys.dim();
    let degrees = sys.total_degrees();
    if let Some(i) = degrees.iter().position(|&d| d == 0) {
        return Err(StartSystemError::ConstantEquation(i));
    }
    let polys = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut e = vec![0; n];
            e[i] = d;
            Polynomial::from_terms(n, [(e, 1.0), (vec![0; n], -1.0)])
        })
        .collect();
    let start = PolySystem::new(polys, sys.var_names().to_vec()).expect("start system is square");

    let roots: Vec<Vec<Complex64>> = degrees
        .iter()
        .map(|&d| {
            (0..d)
                .map(|k| {
                    if k == 0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::from_polar(1.0, std::f64::consts::TAU * f64::from(k) / f64::from(d))
                    }
                })
                .collect()
        })
        .collect();
    let total: usize = degrees.iter().map(|&d| d as usize).product();
    let mut points = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut comps = vec![Complex64::new(0.0, 0.0); n];
        for i in (0..n).rev() {
            let d = degrees[i] as usize;
            comps[i] = roots[i][idx % d];
            idx /= d;
        }
        points.push(ComplexPoint::new(comps).expect("roots of unity are finite"));
    }
    Ok((start, points))
}

struct Homotopy<'a> {
    target: &'a PolySystem,
    start: &'a PolySystem,
    gamma: Complex64,
}

impl Homotopy<'_> {
    fn value(&self, x: &[Complex64], t: f64) -> Vec<Complex64> {
        let f = self.target.eval_unchecked(x);
        let g = self.start.eval_unchecked(x);
        let a = self.gamma * (1.0 - t);
        f.iter().zip(&g).map(|(fi, gi)| a * gi + t * fi).collect()
    }

    fn jacobian(&self, x: &[Complex64], t: f64) -> Matrix<Complex64> {
        let jf = self.target.jacobian_unchecked(x);
        let jg = self.start.jacobian_unchecked(x);
        let a = self.gamma * (1.0 - t);
        let n = x.len();
        Matrix::from_fn(n, n, |i, j| a * jg[(i, j)] + t * jf[(i, j)])
    }

    /// `dx/dt = -H_x^{-1} H_t`.
    fn velocity(&self, x: &[Complex64], t: f64) -> Option<Vec<Complex64>> {
        let f = self.target.eval_unchecked(x);
        let g = self.start.eval_unchecked(x);
        let ht: Vec<Complex64> = f.iter().zip(&g).map(|(fi, gi)| -(*fi - self.gamma * gi)).collect();
        let lu = Lu::factor(&self.jacobian(x, t), TRACK_PIVOT).ok()?;
        let v = lu.solve(&ht);
        v.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(v)
    }

    fn rk4(&self, x: &[Complex64], t: f64, dt: f64) -> Option<Vec<Complex64>> {
        let axpy =
            |a: f64, v: &[Complex64]| -> Vec<Complex64> { x.iter().zip(v).map(|(xi, vi)| xi + vi * a).collect() };
        let k1 = self.velocity(x, t)?;
        let k2 = self.velocity(&axpy(0.5 * dt, &k1), t + 0.5 * dt)?;
        let k3 = self.velocity(&axpy(0.5 * dt, &k2), t + 0.5 * dt)?;
        let k4 = self.velocity(&axpy(dt, &k3), t + dt)?;
        Some(
            (0..x.len())
                .map(|i| x[i] + (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0))
                .collect(),
        )
    }

    /// Newton on `H(·, t)`; `None` unless it converges quickly.
    fn correct(&self, mut x: Vec<Complex64>, t: f64, cfg: &TrackerConfig) -> Option<Vec<Complex64>> {
        let mut prev = f64::INFINITY;
        for _ in 0..cfg.max_newton_iters_per_step {
            let h = self.value(&x, t);
            let lu = Lu::factor(&self.jacobian(&x, t), TRACK_PIVOT).ok()?;
            let dx = lu.solve(&h);
            let size = inf_norm_vec(&dx);
            if !size.is_finite() || size > 0.5 * prev {
                return None;
            }
            for (xi, di) in x.iter_mut().zip(&dx) {
                *xi -= di;
            }
            if size <= cfg.corrector_tolerance * (1.0 + inf_norm_vec(&x)) {
                return Some(x);
            }
            prev = size;
        }
        None
    }
}

/// Plain Newton on the target system until the residual stops decreasing.
fn polish(sys: &PolySystem, mut x: Vec<Complex64>) -> (Vec<Complex64>, f64) {
    let mut res = residual_norm(sys, &x);
    for _ in 0..20 {
        let Ok(lu) = Lu::factor(&sys.jacobian_unchecked(&x), TRACK_PIVOT) else {
            break;
        };
        let dx = lu.solve(&sys.eval_unchecked(&x));
        let cand: Vec<Complex64> = x.iter().zip(&dx).map(|(a, b)| a - b).collect();
        let cand_res = residual_norm(sys, &cand);
        if !(cand_res < res) {
            if cand_res == res && inf_norm_vec(&dx) > 0.0 {
                x = cand;
            }
            break;
        }
        x = cand;
        res = cand_res;
        if res == 0.0 {
            break;
        }
    }
    (x, res)
}

/// Tracks one path from `start_point` at `t = 0` to `t = 1`.
pub fn track_path(
    sys: &PolySystem,
    start_system: &PolySystem,
    start_point: &ComplexPoint,
    path_id: usize,
    cfg: &TrackerConfig,
) -> PathOutcome {
    let hom = Homotopy {
        target: sys,
        start: start_system,
        gamma: cfg.gamma,
    };
    let mut x = start_point.as_slice().to_vec();
    let mut t = 0.0_f64;
    let mut dt = cfg.initial_step;
    let mut streak = 0;
    while t < 1.0 {
        let step = dt.min(1.0 - t);
        let t_next = if step >= 1.0 - t { 1.0 } else { t + step };
        let accepted = hom.rk4(&x, t, step).and_then(|pred| hom.correct(pred, t_next, cfg));
        match accepted {
            Some(next) => {
                x = next;
                t = t_next;
                streak += 1;
                if streak >= 3 {
                    dt = (dt * 2.0).min(cfg.initial_step);
                    streak = 0;
                }
                if inf_norm_vec(&x) > cfg.divergence_norm {
                    return PathOutcome::Diverged(Divergence::Unbounded);
                }
            }
            None => {
                streak = 0;
                dt *= 0.5;
                if dt < cfg.min_step {
                    return PathOutcome::Diverged(Divergence::StepTooSmall { t });
                }
            }
        }
    }
    let (x, residual) = polish(sys, x);
    let converged = backward_error(sys, &x) <= cfg.residual_tolerance;
    match ComplexPoint::new(x) {
        Some(point) if residual.is_finite() => PathOutcome::Finished(ApproxZero {
            point,
            residual,
            path_id,
            converged,
        }),
        _ => PathOutcome::Diverged(Divergence::Unbounded),
    }
}

/// Total order on points used to canonicalize result lists.
pub fn point_cmp(a: &ComplexPoint, b: &ComplexPoint) -> Ordering {
    for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
        let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Summary of a full tracking run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveSummary {
    pub zeros: Vec<ApproxZero>,
    pub paths: usize,
    pub diverged: usize,
    pub unconverged: usize,
    pub retracked: usize,
    /// Paths that still stalled before `t = 1` after re-tracking.
    pub stalled: usize,
    /// The constant actually used; differs from the configured one when a
    /// fallback was needed.
    pub gamma: Complex64,
}

fn track_all(
    sys: &PolySystem,
    start: &PolySystem,
    points: &[(usize, ComplexPoint)],
    cfg: &TrackerConfig,
) -> Vec<(usize, PathOutcome)> {
    points
        .par_iter()
        .map(|(id, p)| (*id, track_path(sys, start, p, *id, cfg)))
        .collect()
}

/// Groups endpoints lying within `tol` of each other (∞-distance). Input is
/// expected in canonical order; each group lists indices into `zeros`.
fn cluster(zeros: &[ApproxZero], tol: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (k, z) in zeros.iter().enumerate() {
        let hit = groups
            .iter()
            .position(|g| g.iter().any(|&m| zeros[m].point.inf_distance(&z.point) < tol));
        match hit {
            Some(g) => groups[g].push(k),
            None => groups.push(vec![k]),
        }
    }
    groups
}

/// The `k`-th fallback constant for `seed`: the `k`-th draw after the
/// configured one from the same stream.
pub fn fallback_gamma(seed: u64, k: usize) -> Complex64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angle: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    for _ in 0..k {
        angle = rng.random_range(0.0..std::f64::consts::TAU);
    }
    Complex64::from_polar(1.0, angle)
}

/// Tracks every start point, drops diverged and unconverged paths and merges
/// coincident endpoints.
///
/// Paths that stall well before `t = 1` are re-tracked once with finer step
/// bounds. Paths that end on the same endpoint usually indicate a path jump;
/// they are re-tracked with an eight times smaller step bound before
/// deduplication.
///
/// A path that stalls even with fine steps passes too close to a singular
/// point, which only happens for an unlucky `gamma`. The whole run is then
/// repeated with [`fallback_gamma`], up to `gamma_attempts` runs in total,
/// and the run with the fewest stalls is kept.
pub fn solve_with_summary(sys: &PolySystem, cfg: &TrackerConfig) -> Result<SolveSummary, StartSystemError> {
    let (start, points) = total_degree_start(sys)?;
    let mut best: Option<SolveSummary> = None;
    for k in 0..cfg.gamma_attempts.max(1) {
        let mut run_cfg = cfg.clone();
        if k > 0 {
            run_cfg.gamma = fallback_gamma(cfg.seed, k);
            debug!(
                "{} stalled paths; retrying with gamma {}",
                best.as_ref().map_or(0, |b| b.stalled),
                run_cfg.gamma
            );
        }
        let summary = solve_once(sys, &start, &points, &run_cfg);
        let better = best.as_ref().is_none_or(|b| summary.stalled < b.stalled);
        if better {
            best = Some(summary);
        }
        if best.as_ref().is_some_and(|b| b.stalled == 0) {
            break;
        }
    }
    Ok(best.expect("at least one attempt"))
}

fn is_stall(o: &PathOutcome) -> bool {
    matches!(o, PathOutcome::Diverged(Divergence::StepTooSmall { t }) if *t < STALL_RETRY_BEFORE)
}

fn solve_once(sys: &PolySystem, start: &PolySystem, points: &[ComplexPoint], cfg: &TrackerConfig) -> SolveSummary {
    let indexed: Vec<(usize, ComplexPoint)> = points.iter().cloned().enumerate().collect();
    let mut outcomes = track_all(sys, start, &indexed, cfg);

    let mut retracked = 0;
    let stalled: Vec<(usize, ComplexPoint)> = outcomes
        .iter()
        .filter(|(_, o)| is_stall(o))
        .map(|(id, _)| (*id, indexed[*id].1.clone()))
        .collect();
    if !stalled.is_empty() {
        let mut fine = cfg.clone();
        fine.initial_step /= 8.0;
        fine.min_step /= 100.0;
        debug!("re-tracking {} stalled paths", stalled.len());
        retracked += stalled.len();
        for (id, outcome) in track_all(sys, start, &stalled, &fine) {
            outcomes[id].1 = outcome;
        }
    }

    let mut round_cfg = cfg.clone();
    for round in 0..cfg.retrack_rounds {
        let finished: Vec<ApproxZero> = canonical_finished(&outcomes);
        let collided: Vec<usize> = cluster(&finished, cfg.endpoint_cluster_tolerance)
            .into_iter()
            .filter(|g| g.len() > 1)
            .flatten()
            .map(|k| finished[k].path_id)
            .collect();
        if collided.is_empty() {
            break;
        }
        round_cfg.initial_step /= 8.0;
        round_cfg.min_step = round_cfg.min_step.min(round_cfg.initial_step);
        debug!("round {round}: re-tracking {} colliding paths", collided.len());
        let redo: Vec<(usize, ComplexPoint)> = collided.iter().map(|&id| (id, indexed[id].1.clone())).collect();
        retracked += redo.len();
        for (id, outcome) in track_all(sys, start, &redo, &round_cfg) {
            outcomes[id].1 = outcome;
        }
    }

    let paths = outcomes.len();
    let diverged = outcomes
        .iter()
        .filter(|(_, o)| matches!(o, PathOutcome::Diverged(_)))
        .count();
    let finished = canonical_finished(&outcomes);
    let unconverged = finished.iter().filter(|z| !z.converged).count();
    let converged: Vec<ApproxZero> = finished.into_iter().filter(|z| z.converged).collect();
    let zeros = cluster(&converged, cfg.endpoint_cluster_tolerance)
        .into_iter()
        .map(|g| {
            g.into_iter()
                .map(|k| &converged[k])
                .min_by(|a, b| a.residual.total_cmp(&b.residual).then(a.path_id.cmp(&b.path_id)))
                .expect("non-empty cluster")
                .clone()
        })
        .collect();
    SolveSummary {
        zeros,
        paths,
        diverged,
        unconverged,
        retracked,
        stalled: outcomes.iter().filter(|(_, o)| is_stall(o)).count(),
        gamma: cfg.gamma,
    }
}

fn canonical_finished(outcomes: &[(usize, PathOutcome)]) -> Vec<ApproxZero> {
    let mut out: Vec<ApproxZero> = outcomes
        .iter()
        .filter_map(|(_, o)| match o {
            PathOutcome::Finished(z) => Some(z.clone()),
            PathOutcome::Diverged(_) => None,
        })
        .collect();
    out.sort_by(|a, b| point_cmp(&a.point, &b.point).then(a.path_id.cmp(&b.path_id)));
    out
}

/// All finite, converged, deduplicated zeros of `sys`. A system with a
/// constant equation has no zeros (or is identically satisfied in that
/// equation) and yields an empty list.
pub fn solve_all(sys: &PolySystem, cfg: &TrackerConfig) -> Vec<ApproxZero> {
    match solve_with_summary(sys, cfg) {
        Ok(s) => s.zeros,
        Err(e) => {
            warn!("{e}");
            Vec::new()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_system;

    #[test]
    fn start_system_for_univariate_quadratic() {
        let sys = parse_system("vars: x\nx^2 - 2").unwrap();
        let (start, pts) = total_degree_start(&sys).unwrap();
        assert_eq!(start.to_string(), "vars: x\nx^2 - 1\n");
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].as_slice()[0], Complex64::new(1.0, 0.0));
        assert!((pts[1].as_slice()[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn start_points_solve_start_system() {
        let sys = parse_system("vars: x y\nx^3*y - 1\ny^2 + x").unwrap();
        let (start, pts) = total_degree_start(&sys).unwrap();
        assert_eq!(pts.len(), 8);
        for p in &pts {
            assert!(residual_norm(&start, p.as_slice()) < 1e-14);
        }
    }

    #[test]
    fn constant_equation_rejected() {
        let sys = parse_system("vars: x y\nx - 1\n3").unwrap();
        assert_eq!(
            total_degree_start(&sys).unwrap_err(),
            StartSystemError::ConstantEquation(1)
        );
        assert!(solve_all(&sys, &TrackerConfig::default()).is_empty());
    }

    #[test]
    fn config_validation() {
        assert!(TrackerConfig::default().validate().is_ok());
        let cfg = TrackerConfig {
            min_step: 0.5,
            initial_step: 0.1,
            ..TrackerConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = TrackerConfig {
            divergence_norm: 1.0,
            ..TrackerConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn seeded_gamma_is_reproducible() {
        assert_eq!(TrackerConfig::with_seed(7).gamma, TrackerConfig::with_seed(7).gamma);
        assert_ne!(TrackerConfig::with_seed(7).gamma, TrackerConfig::with_seed(8).gamma);
        assert!((TrackerConfig::with_seed(3).gamma.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sqrt_two_paths() {
        let sys = parse_system("vars: x\nx^2 - 2").unwrap();
        let zeros = solve_all(&sys, &TrackerConfig::default());
        assert_eq!(zeros.len(), 2);
        let r = std::f64::consts::SQRT_2;
        assert!((zeros[0].point.as_slice()[0] - Complex64::new(-r, 0.0)).norm() < 1e-12);
        assert!((zeros[1].point.as_slice()[0] - Complex64::new(r, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn linear_system_single_path() {
        let sys = parse_system("vars: x y\nx - 1\ny - 2").unwrap();
        let zeros = solve_all(&sys, &TrackerConfig::default());
        assert_eq!(zeros.len(), 1);
        assert!(zeros[0].residual < 1e-14);
        assert!((zeros[0].point.as_slice()[1] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn imaginary_roots() {
        let sys = parse_system("vars: x\nx^2 + 1").unwrap();
        let zeros = solve_all(&sys, &TrackerConfig::default());
        assert_eq!(zeros.len(), 2);
        for z in &zeros {
            let v = z.point.as_slice()[0];
            assert!(v.re.abs() < 1e-12 && (v.im.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn paths_to_infinity_are_dropped() {
        // Bezout number 4, but only 2 finite solutions.
        let sys = parse_system("vars: x y\nx*y - 1\nx^2 + x*y - 3").unwrap();
        let s = solve_with_summary(&sys, &TrackerConfig::default()).unwrap();
        assert_eq!(s.paths, 4);
        assert_eq!(s.zeros.len(), 2);
        for z in &s.zeros {
            assert!(z.residual <= 1e-10);
        }
    }
}
