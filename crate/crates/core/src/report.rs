use std::fmt::Write as _;

use crate::metrics::format_db;

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iter: usize,
    pub psnr_db: f64,
    pub mssim: Option<f64>,
}

/// What a solver run did and how good its output is.
///
/// Fidelity fields are `None` when no reference image was supplied.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    /// Sorted by `iter`; iteration 0 is the input itself.
    pub per_iteration: Vec<IterationRecord>,
    pub final_psnr: Option<f64>,
    pub final_mssim: Option<f64>,
    /// Iteration whose iterate was returned.
    pub best_iter: usize,
    /// Number of steps actually taken.
    pub iterations_run: usize,
    pub params_echo: String,
    /// Seconds. The only field that varies between identical runs.
    pub wall_time: f64,
    /// Smallest and largest intensity over all iterates, in gray levels.
    pub iterate_min: f64,
    pub iterate_max: f64,
    /// Number of iterates leaving `[min I0 - 2, max I0 + 2]`.
    pub bound_violations: usize,
}

impl QualityReport {
    /// Per-iteration trace with header `iter,psnr_db,mssim`; a missing MSSIM
    /// is an empty field.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("iter,psnr_db,mssim\n");
        for r in &self.per_iteration {
            let mssim = r.mssim.map(|m| m.to_string()).unwrap_or_default();
            writeln!(out, "{},{},{}", r.iter, format_db(r.psnr_db), mssim).unwrap();
        }
        out
    }

    /// Flat `key=value` summary, one pair per line.
    pub fn summary(&self) -> String {
        let opt = |v: Option<f64>, f: fn(f64) -> String| v.map(f).unwrap_or_else(|| "na".into());
        let mut out = String::new();
        writeln!(out, "final_psnr={}", opt(self.final_psnr, format_db)).unwrap();
        writeln!(out, "final_mssim={}", opt(self.final_mssim, |v| v.to_string())).unwrap();
        writeln!(out, "best_iter={}", self.best_iter).unwrap();
        writeln!(out, "iterations_run={}", self.iterations_run).unwrap();
        writeln!(out, "iterate_min={}", self.iterate_min).unwrap();
        writeln!(out, "iterate_max={}", self.iterate_max).unwrap();
        writeln!(out, "bound_violations={}", self.bound_violations).unwrap();
        writeln!(out, "params={}", self.params_echo).unwrap();
        writeln!(out, "wall_time={}", self.wall_time).unwrap();
        out
    }

    /// Same report with the wall-clock field zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time: 0.0,
            ..self.clone()
        }
    }
}
