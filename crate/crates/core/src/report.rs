//! Rendering of an [`IsolationReport`] as a plain-text listing or as JSON.
//!
//! The text form prints every box as an `intval` block with endpoints
//! rounded outward to 17 significant digits. The JSON form keeps the exact
//! binary endpoints (shortest round-trip decimals), so parsing it back gives
//! bit-identical boxes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::interval::format::{format_down, format_up};
use crate::interval::Interval;
use crate::isolate::IsolationReport;

/// Wall-clock time per phase, for `--phase-timing`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhaseTimes {
    pub homotopy: Duration,
    pub isolation: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonRoot {
    #[serde(rename = "box")]
    pub region: Vec<Interval>,
    pub center: Vec<f64>,
    pub bisections: usize,
    pub tolerance_met: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonUnverified {
    /// `[re, im]` per variable.
    pub point: Vec<[f64; 2]>,
    pub path_id: usize,
    pub reason: String,
}

/// The stable machine-readable report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub vars: Vec<String>,
    pub nreal: usize,
    pub roots: Vec<JsonRoot>,
    pub rejected_nonreal: usize,
    pub unverified: Vec<JsonUnverified>,
    /// Empty unless phase timing was requested, so that reports are
    /// reproducible byte for byte.
    pub timings: BTreeMap<String, f64>,
}

impl JsonReport {
    pub fn new(report: &IsolationReport, times: Option<&PhaseTimes>) -> Self {
        let roots = report
            .certificates
            .iter()
            .map(|c| JsonRoot {
                region: c.region.components().to_vec(),
                center: c.region.mid(),
                bisections: c.bisections + c.narrowing_bisections,
                tolerance_met: c.tolerance_met,
            })
            .collect();
        let unverified = report
            .unverified
            .iter()
            .map(|(z, why)| JsonUnverified {
                point: z.point.as_slice().iter().map(|c| [c.re, c.im]).collect(),
                path_id: z.path_id,
                reason: why.to_string(),
            })
            .collect();
        let mut timings = BTreeMap::new();
        if let Some(t) = times {
            let hom = t.homotopy.as_secs_f64();
            let iso = t.isolation.as_secs_f64();
            timings.insert("homotopy_s".to_string(), hom);
            timings.insert("isolation_s".to_string(), iso);
            if hom > 0.0 {
                timings.insert("isolation_over_homotopy".to_string(), iso / hom);
            }
            let phases = &report.timings;
            for (name, d) in [
                ("filter_s", phases.filter),
                ("init_width_s", phases.init_width),
                ("krawczyk_s", phases.krawczyk),
                ("disjoint_s", phases.disjoint),
                ("narrowing_s", phases.narrowing),
            ] {
                timings.insert(name.to_string(), d.as_secs_f64());
            }
        }
        JsonReport {
            vars: report.var_names.clone(),
            nreal: report.nreal(),
            roots,
            rejected_nonreal: report.rejected_nonreal,
            unverified,
            timings,
        }
    }
}

pub fn to_json(report: &IsolationReport, times: Option<&PhaseTimes>) -> String {
    let mut s = serde_json::to_string_pretty(&JsonReport::new(report, times)).expect("report serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<JsonReport, serde_json::Error> {
    serde_json::from_str(text)
}

/// The `intval` listing: one block per box, then the variable order and the
/// number of real roots.
pub fn to_text(report: &IsolationReport, times: Option<&PhaseTimes>) -> String {
    let rows: Vec<Vec<(String, String)>> = report
        .certificates
        .iter()
        .map(|c| {
            c.region
                .components()
                .iter()
                .map(|iv| (format_down(iv.lo()), format_up(iv.hi())))
                .collect()
        })
        .collect();
    let width = rows
        .iter()
        .flatten()
        .map(|(a, b)| a.len().max(b.len()))
        .max()
        .unwrap_or(0)
        + 2;
    let mut out = String::new();
    for block in &rows {
        out.push_str("intval  =\n");
        for (lo, hi) in block {
            let _ = writeln!(out, "[{lo:>width$},{hi:>width$}]");
        }
    }
    out.push_str("The order of variables:\n");
    for v in &report.var_names {
        let _ = writeln!(out, "    '{v}'");
    }
    let _ = writeln!(out, "The number of real roots: {}", report.nreal());
    if report.rejected_nonreal > 0 {
        let _ = writeln!(out, "Non-real candidates discarded: {}", report.rejected_nonreal);
    }
    let missed = report.tolerance_failures();
    if missed > 0 {
        let _ = writeln!(out, "Boxes wider than the requested tolerance: {missed}");
    }
    for (z, why) in &report.unverified {
        let _ = writeln!(out, "Unverified candidate (path {}): {why}", z.path_id);
    }
    if let Some(t) = times {
        let _ = writeln!(
            out,
            "Homotopy time: {:.6} s, isolation time: {:.6} s",
            t.homotopy.as_secs_f64(),
            t.isolation.as_secs_f64()
        );
    }
    out
}
