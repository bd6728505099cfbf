//! Certified real root isolation for square polynomial systems with simple
//! roots.
//!
//! The pipeline runs in three stages:
//!
//! 1. [`homotopy`] finds approximate complex zeros with a total-degree
//!    homotopy, or loads them from a file produced by an external solver.
//! 2. [`certify`] discards candidates that are clearly non-real and builds,
//!    for every remaining one, a small real box guaranteed by the Kantorovich
//!    theorem to contain exactly one zero.
//! 3. [`isolate`] verifies each box with the Krawczyk operator in outward
//!    rounded interval arithmetic, removes overlaps and narrows the boxes to a
//!    requested width.
//!
//! ```
//! use isolat::{poly::parse_system, homotopy::TrackerConfig, isolate::{real_root_isolate, IsolateConfig}};
//!
//! let sys = parse_system("vars: x y\nx^2 + y^2 - 4\nx - y").unwrap();
//! let zeros = isolat::homotopy::solve_all(&sys, &TrackerConfig::default());
//! let report = real_root_isolate(&sys, &zeros, 1e-10, &IsolateConfig::default());
//! assert_eq!(report.nreal(), 2);
//! ```

// Comparisons like `!(x > 0.0)` are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod certify;
pub mod homotopy;
pub mod interval;
pub mod isolate;
pub mod linalg;
pub mod poly;
pub mod report;

/// Sizes the global worker pool used by the tracker and the verifier. Must
/// be called before any parallel work starts.
pub fn set_worker_threads(n: usize) -> Result<(), rayon::ThreadPoolBuildError> {
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()
}
