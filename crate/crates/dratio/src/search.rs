//! Random-restart hill climbing for large ratios over V-polytope instances.

use dratio_core::ratio::RatioReport;
use dratio_core::trial::{climb, search_start};
use dratio_core::{derive_seed, Instance};
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub restarts: u64,
    pub steps: usize,
    pub step_size: f64,
    pub seed: u64,
}

impl SearchConfig {
    /// `k = n = m`, 200 steps of size 0.05.
    pub fn new(m: usize, restarts: u64, seed: u64) -> Self {
        Self {
            m,
            k: m,
            n: m,
            restarts,
            steps: 200,
            step_size: 0.05,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub best: Instance,
    pub report: RatioReport,
    /// Restart that produced `best`; it is replayed by
    /// `climb(search_start(m, k, n, restart, seed), steps, step_size, climb_seed)`.
    pub restart: u64,
    pub climb_seed: u64,
}

impl SearchOutcome {
    pub fn ratio_over_m(&self) -> f64 {
        self.report.ratio / self.report.m as f64
    }

    /// Empirical only: whether the search found a ratio above `m`.
    pub fn exceeds_m(&self) -> bool {
        self.report.ratio > self.report.m as f64
    }
}

/// Fails with [`dratio_core::Error::BoundViolated`] if any restart pushes the
/// ratio past its bound.
pub fn search_max_ratio(cfg: &SearchConfig) -> dratio_core::Result<SearchOutcome> {
    if cfg.restarts == 0 || cfg.n == 0 || !(cfg.step_size > 0.0) {
        return Err(dratio_core::Error::InvalidParameter(
            "restarts, n and step size must be positive",
        ));
    }
    let runs: Vec<dratio_core::Result<SearchOutcome>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let climb_seed = derive_seed(cfg.seed, r);
            let start = search_start(cfg.m, cfg.k, cfg.n, r, cfg.seed)?;
            let (best, report) = climb(start, cfg.steps, cfg.step_size, climb_seed)?;
            Ok(SearchOutcome {
                best,
                report,
                restart: r,
                climb_seed,
            })
        })
        .collect();
    let mut best: Option<SearchOutcome> = None;
    for run in runs {
        let run = run?;
        if best.as_ref().is_none_or(|b| run.report.ratio > b.report.ratio) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}
