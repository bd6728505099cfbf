//! Krawczyk verification, overlap removal, narrowing, and the end-to-end
//! driver [`real_root_isolate`].

mod krawczyk;
mod postprocess;

use std::time::{Duration, Instant};

use log::debug;
use rayon::prelude::*;
use serde::Serialize;

pub use krawczyk::{
    divide, divide_at, krawczyk_image, krawczyk_verify, BisectionBudget, CannotDivide, KrawczykError, Verified,
    VerifyOutcome, VerifyStatus,
};
pub use postprocess::{disjoint_process, narrowing, OFF_CENTER_SHIFT};

use crate::certify::{empirical_radius, init_width, CertifyError, KantorovichData, DEFAULT_MAX_RETRIES};
use crate::homotopy::ApproxZero;
use crate::interval::IntervalBox;
use crate::poly::PolySystem;

/// A box holding exactly one real zero, with the evidence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub region: IntervalBox,
    /// `K(region)`, strictly inside `region`.
    pub image: IntervalBox,
    pub source: Option<ApproxZero>,
    /// Bisections needed to verify the initial box.
    pub bisections: usize,
    pub narrowing_bisections: usize,
    pub krawczyk_steps: usize,
    /// False when narrowing could not reach the requested width.
    pub tolerance_met: bool,
}

impl Certificate {
    pub fn new(region: IntervalBox, image: IntervalBox, source: Option<ApproxZero>) -> Self {
        Certificate {
            region,
            image,
            source,
            bisections: 0,
            narrowing_bisections: 0,
            krawczyk_steps: 0,
            tolerance_met: true,
        }
    }

    /// Recomputes `K(region)` and checks strict inclusion.
    pub fn recheck(&self, sys: &PolySystem) -> bool {
        krawczyk_image(sys, &self.region)
            .ok()
            .and_then(|k| k.is_interior(&self.region).ok())
            .unwrap_or(false)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsolateConfig {
    /// Skip candidates that are clearly non-real.
    pub filter_nonreal: bool,
    /// Newton refinements allowed while establishing the Kantorovich bound.
    pub max_retries: usize,
    /// Radius enlargements tried around a refined candidate before falling
    /// back to bisection.
    pub inflation_attempts: usize,
    pub budget: BisectionBudget,
}

impl Default for IsolateConfig {
    fn default() -> Self {
        IsolateConfig {
            filter_nonreal: true,
            max_retries: DEFAULT_MAX_RETRIES,
            inflation_attempts: 8,
            budget: BisectionBudget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum UnverifiedReason {
    /// The Kantorovich condition could not be established.
    InitWidth(CertifyError),
    /// Interval arithmetic proved there is no zero near the candidate.
    NoRootNearby,
    /// Bisection budget exhausted without a decision.
    Undecided,
}

impl std::fmt::Display for UnverifiedReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnverifiedReason::InitWidth(e) => write!(f, "initial width: {e}"),
            UnverifiedReason::NoRootNearby => write!(f, "no real zero near the candidate"),
            UnverifiedReason::Undecided => write!(f, "verification undecided"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CandidateStatus {
    FilteredNonReal,
    Verified,
    Unverified(UnverifiedReason),
}

/// What happened to one approximate zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateReport {
    pub zero: ApproxZero,
    pub empirical_radius: Option<f64>,
    pub kantorovich: Option<KantorovichData>,
    pub status: CandidateStatus,
    pub krawczyk_steps: usize,
    pub bisections: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timings {
    /// Summed over candidates (they run in parallel).
    pub filter: Duration,
    pub init_width: Duration,
    pub krawczyk: Duration,
    pub disjoint: Duration,
    pub narrowing: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsolationReport {
    pub var_names: Vec<String>,
    /// Pairwise disjoint, sorted by lower corner.
    pub certificates: Vec<Certificate>,
    pub rejected_nonreal: usize,
    pub unverified: Vec<(ApproxZero, UnverifiedReason)>,
    pub candidates: Vec<CandidateReport>,
    pub timings: Timings,
}

impl IsolationReport {
    pub fn nreal(&self) -> usize {
        self.certificates.len()
    }

    /// True when some certificate missed the width tolerance.
    pub fn tolerance_failures(&self) -> usize {
        self.certificates.iter().filter(|c| !c.tolerance_met).count()
    }
}

struct Candidate {
    report: CandidateReport,
    certificates: Vec<Certificate>,
    filter: Duration,
    init: Duration,
    krawczyk: Duration,
}

fn process(sys: &PolySystem, zero: &ApproxZero, cfg: &IsolateConfig) -> Candidate {
    let started = Instant::now();
    let emp = empirical_radius(sys, &zero.point);
    let nonreal = match emp {
        Some(r) => zero.point.as_slice().iter().any(|c| c.im.abs() > r),
        None => false,
    };
    let filter = started.elapsed();
    let mut out = Candidate {
        report: CandidateReport {
            zero: zero.clone(),
            empirical_radius: emp,
            kantorovich: None,
            status: CandidateStatus::FilteredNonReal,
            krawczyk_steps: 0,
            bisections: 0,
            elapsed: Duration::ZERO,
        },
        certificates: Vec::new(),
        filter,
        init: Duration::ZERO,
        krawczyk: Duration::ZERO,
    };
    if cfg.filter_nonreal && nonreal {
        out.report.elapsed = started.elapsed();
        return out;
    }

    let t = Instant::now();
    let kd = match init_width(sys, &zero.point, cfg.max_retries) {
        Ok(kd) => kd,
        Err(e) => {
            out.init = t.elapsed();
            out.report.status = CandidateStatus::Unverified(UnverifiedReason::InitWidth(e));
            out.report.elapsed = started.elapsed();
            return out;
        }
    };
    out.init = t.elapsed();

    let t = Instant::now();
    let (verified, steps, bisections, status) = verify_candidate(sys, &kd, cfg);
    out.krawczyk = t.elapsed();
    out.report.kantorovich = Some(kd);
    out.report.krawczyk_steps = steps;
    out.report.bisections = bisections;
    out.report.status = status;
    out.certificates = verified
        .into_iter()
        .map(|v| Certificate {
            bisections,
            krawczyk_steps: steps,
            ..Certificate::new(v.region, v.image, Some(zero.clone()))
        })
        .collect();
    out.report.elapsed = started.elapsed();
    out
}

/// Verifies the box around a refined candidate.
///
/// The Kantorovich radius can sit below the rounding error of the interval
/// evaluation, in which case `K(X)` cannot fit inside `X`. The radius is then
/// enlarged to cover the computed image and the test repeated, a few times,
/// before falling back to bisection.
fn verify_candidate(
    sys: &PolySystem,
    kd: &KantorovichData,
    cfg: &IsolateConfig,
) -> (Vec<Verified>, usize, usize, CandidateStatus) {
    let c = &kd.refined_center;
    let mut radius = kd.box_radius;
    let mut steps = 0;
    let mut x = IntervalBox::midrad(c, radius).expect("radius is non-negative");
    for _ in 0..cfg.inflation_attempts {
        steps += 1;
        let Ok(k) = krawczyk_image(sys, &x) else {
            break;
        };
        if k.is_interior(&x).expect("same dimension") {
            return (
                vec![Verified {
                    region: x,
                    image: k,
                    depth: 0,
                }],
                steps,
                0,
                CandidateStatus::Verified,
            );
        }
        let reach = k
            .components()
            .iter()
            .zip(c)
            .map(|(ki, ci)| (ki.lo() - ci).abs().max((ki.hi() - ci).abs()))
            .fold(0.0, f64::max);
        if !reach.is_finite() {
            break;
        }
        radius = (2.0 * radius).max(2.0 * reach);
        x = IntervalBox::midrad(c, radius).expect("radius is non-negative");
    }
    debug!("falling back to bisection around {c:?}");
    let v = krawczyk_verify(sys, &x, &cfg.budget);
    let status = match v.status() {
        VerifyStatus::Verified => CandidateStatus::Verified,
        VerifyStatus::NoRoot => CandidateStatus::Unverified(UnverifiedReason::NoRootNearby),
        VerifyStatus::Undecided => CandidateStatus::Unverified(UnverifiedReason::Undecided),
    };
    (v.verified, steps + v.krawczyk_steps, v.bisections, status)
}

fn imag_size(c: &Certificate) -> f64 {
    c.source
        .as_ref()
        .map_or(0.0, |z| z.point.im().iter().map(|v| v.abs()).fold(0.0, f64::max))
}

/// Certifies every real zero among `zeros`.
///
/// Candidates are processed in parallel; overlaps between their boxes are
/// then removed, the boxes narrowed to radius `tau` and sorted by lower
/// corner. The output does not depend on thread scheduling.
pub fn real_root_isolate(sys: &PolySystem, zeros: &[ApproxZero], tau: f64, cfg: &IsolateConfig) -> IsolationReport {
    let processed: Vec<Candidate> = zeros.par_iter().map(|z| process(sys, z, cfg)).collect();

    let mut timings = Timings::default();
    let mut rejected_nonreal = 0;
    let mut unverified = Vec::new();
    let mut certificates = Vec::new();
    let mut candidates = Vec::with_capacity(processed.len());
    for c in processed {
        timings.filter += c.filter;
        timings.init_width += c.init;
        timings.krawczyk += c.krawczyk;
        match &c.report.status {
            CandidateStatus::FilteredNonReal => rejected_nonreal += 1,
            CandidateStatus::Unverified(reason) => unverified.push((c.report.zero.clone(), reason.clone())),
            CandidateStatus::Verified => {}
        }
        certificates.extend(c.certificates);
        candidates.push(c.report);
    }
    // Earlier boxes win overlaps, so a candidate closer to the real space
    // takes precedence over one whose real part merely lands nearby.
    certificates.sort_by(|a, b| {
        imag_size(a)
            .total_cmp(&imag_size(b))
            .then_with(|| a.region.lex_cmp(&b.region))
    });

    let t = Instant::now();
    let certificates = disjoint_process(certificates, sys, &cfg.budget);
    timings.disjoint = t.elapsed();

    let t = Instant::now();
    let mut certificates = narrowing(certificates, sys, tau, &cfg.budget);
    certificates.sort_by(|a, b| a.region.lex_cmp(&b.region));
    timings.narrowing = t.elapsed();

    IsolationReport {
        var_names: sys.var_names().to_vec(),
        certificates,
        rejected_nonreal,
        unverified,
        candidates,
        timings,
    }
}
