//! Runs the full pipeline over a directory of systems and tabulates counts
//! and timings per system.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::homotopy::{solve_with_summary, TrackerConfig};
use crate::isolate::{real_root_isolate, CandidateStatus, IsolateConfig};
use crate::poly::parse_system;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub tracker: TrackerConfig,
    pub isolate: IsolateConfig,
    pub tau: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            tracker: TrackerConfig::default(),
            isolate: IsolateConfig::default(),
            tau: 1e-10,
        }
    }
}

/// One system's results. Failed systems carry `error` and zeros elsewhere.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BenchRow {
    pub system: String,
    pub paths: usize,
    pub total: usize,
    pub real: usize,
    pub filtered_nonreal: usize,
    pub unverified: usize,
    pub homotopy_s: f64,
    pub isolation_s: f64,
    pub isolation_over_homotopy: f64,
    pub avg_verify_s: f64,
    pub max_verify_s: f64,
    pub avg_init_radius: f64,
    pub avg_final_radius: f64,
    /// Verified candidates that needed no bisection and at most two
    /// Krawczyk steps.
    pub single_step: usize,
    pub error: Option<String>,
}

/// The `.txt` files of `dir`, sorted by name.
pub fn suite_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    Ok(files)
}

pub fn run_system(name: &str, text: &str, cfg: &BenchConfig) -> BenchRow {
    let mut row = BenchRow {
        system: name.to_string(),
        ..BenchRow::default()
    };
    let sys = match parse_system(text) {
        Ok(s) => s,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let t = Instant::now();
    let summary = match solve_with_summary(&sys, &cfg.tracker) {
        Ok(s) => s,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.homotopy_s = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let report = real_root_isolate(&sys, &summary.zeros, cfg.tau, &cfg.isolate);
    row.isolation_s = t.elapsed().as_secs_f64();
    if row.homotopy_s > 0.0 {
        row.isolation_over_homotopy = row.isolation_s / row.homotopy_s;
    }
    row.paths = summary.paths;
    row.total = summary.zeros.len();
    row.real = report.nreal();
    row.filtered_nonreal = report.rejected_nonreal;
    row.unverified = report.unverified.len();

    let verified: Vec<_> = report
        .candidates
        .iter()
        .filter(|c| c.status == CandidateStatus::Verified)
        .collect();
    if !verified.is_empty() {
        let times: Vec<f64> = verified.iter().map(|c| c.elapsed.as_secs_f64()).collect();
        row.avg_verify_s = times.iter().sum::<f64>() / times.len() as f64;
        row.max_verify_s = times.iter().cloned().fold(0.0, f64::max);
        let radii: Vec<f64> = verified
            .iter()
            .filter_map(|c| c.kantorovich.as_ref().map(|k| k.box_radius))
            .collect();
        row.avg_init_radius = radii.iter().sum::<f64>() / radii.len().max(1) as f64;
        row.single_step = verified
            .iter()
            .filter(|c| c.bisections == 0 && c.krawczyk_steps <= 2)
            .count();
    }
    if !report.certificates.is_empty() {
        row.avg_final_radius =
            report.certificates.iter().map(|c| c.region.max_rad()).sum::<f64>() / report.certificates.len() as f64;
    }
    row
}

/// Runs every system in `dir`; a failing system is recorded and the suite
/// continues.
pub fn run_suite(dir: &Path, cfg: &BenchConfig) -> std::io::Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for path in suite_files(dir)? {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let row = match std::fs::read_to_string(&path) {
            Ok(text) => run_system(&name, &text, cfg),
            Err(e) => BenchRow {
                system: name,
                error: Some(e.to_string()),
                ..BenchRow::default()
            },
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 output")
}

pub fn to_json(rows: &[BenchRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

/// Aligned table for terminals.
pub fn to_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:<10} {:>6} {:>6} {:>5} {:>8} {:>10} {:>10} {:>11} {:>11}\n",
        "system", "paths", "total", "real", "complex", "homotopy", "isolation", "init rad", "final rad"
    );
    for r in rows {
        match &r.error {
            Some(e) => out.push_str(&format!("{:<10} error: {e}\n", r.system)),
            None => out.push_str(&format!(
                "{:<10} {:>6} {:>6} {:>5} {:>8} {:>9.3}s {:>9.3}s {:>11.3e} {:>11.3e}\n",
                r.system,
                r.paths,
                r.total,
                r.real,
                r.filtered_nonreal,
                r.homotopy_s,
                r.isolation_s,
                r.avg_init_radius,
                r.avg_final_radius
            )),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_system_row() {
        let row = run_system("circle", "vars: x y\nx^2 + y^2 - 4\nx - y", &BenchConfig::default());
        assert_eq!((row.paths, row.total, row.real, row.filtered_nonreal), (2, 2, 2, 0));
        assert_eq!(row.single_step, 2);
        assert!(row.error.is_none());
    }

    #[test]
    fn parse_failure_is_recorded() {
        let row = run_system("broken", "vars: x\nx^", &BenchConfig::default());
        assert!(row.error.is_some());
        let csv = to_csv(&[row]);
        assert!(csv.starts_with("system,paths,total,real"));
        assert!(csv.contains("broken"));
    }
}
