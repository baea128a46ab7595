//! Randomized verification sweep.
//!
//! Trial `i` draws its instance from `derive_seed(seed, i)`, so any trial can
//! be replayed alone. Trials run in parallel; results are collected in index
//! order and reduced with max/sum only, so the summary does not depend on the
//! thread count.

use std::time::Instant;

use dratio_core::trial::{evaluate, sweep_instance, SweepSpec, TrialOutcome};
use dratio_core::{BodyKind, Instance};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub trials: u64,
    pub violations_eq1: u64,
    pub violations_chain: u64,
    pub max_ratio_over_m: f64,
    pub max_ratio_over_bound: f64,
    pub seed: u64,
    pub elapsed_secs: f64,
    /// Trials whose instance violated a check, with their replay seeds.
    pub violations: Vec<ViolationRecord>,
    /// Trials whose generation or solve failed, with their replay seeds.
    pub failures: Vec<FailureRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationRecord {
    pub index: u64,
    pub seed: u64,
    pub kind: BodyKind,
    pub m: usize,
    pub ratio: f64,
    pub bound: f64,
    pub eq1_ok: bool,
    pub chain_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureRecord {
    pub index: u64,
    pub seed: u64,
    pub error: String,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.violations_eq1 == 0 && self.violations_chain == 0 && self.failures.is_empty()
    }
}

type TrialResult = (u64, u64, Result<TrialOutcome, String>);

fn summarize(seed: u64, results: Vec<TrialResult>, started: Instant) -> SweepSummary {
    let mut s = SweepSummary {
        trials: results.len() as u64,
        violations_eq1: 0,
        violations_chain: 0,
        max_ratio_over_m: 0.0,
        max_ratio_over_bound: 0.0,
        seed,
        elapsed_secs: 0.0,
        violations: Vec::new(),
        failures: Vec::new(),
    };
    for (index, trial_seed, result) in results {
        match result {
            Ok(t) => {
                let (eq1, chain) = (t.eq1_ok(), t.chain_ok());
                s.violations_eq1 += u64::from(!eq1);
                s.violations_chain += u64::from(!chain);
                s.max_ratio_over_m = s.max_ratio_over_m.max(t.ratio_over_m());
                s.max_ratio_over_bound = s.max_ratio_over_bound.max(t.ratio_over_bound());
                if !(eq1 && chain) {
                    s.violations.push(ViolationRecord {
                        index,
                        seed: trial_seed,
                        kind: t.kind,
                        m: t.report.m,
                        ratio: t.report.ratio,
                        bound: t.report.bound,
                        eq1_ok: eq1,
                        chain_ok: chain,
                    });
                }
            }
            Err(error) => s.failures.push(FailureRecord {
                index,
                seed: trial_seed,
                error,
            }),
        }
    }
    s.elapsed_secs = started.elapsed().as_secs_f64();
    s
}

/// Runs `trials` random trials drawn according to `spec`.
pub fn verify_sweep(trials: u64, spec: &SweepSpec, seed: u64) -> SweepSummary {
    let started = Instant::now();
    let results: Vec<TrialResult> = (0..trials)
        .into_par_iter()
        .map(|i| match sweep_instance(spec, seed, i) {
            Ok((trial_seed, inst)) => (
                i,
                trial_seed,
                evaluate(&inst, spec.eps, spec.n_dirs, trial_seed).map_err(|e| e.to_string()),
            ),
            Err(e) => (i, dratio_core::derive_seed(seed, i), Err(e.to_string())),
        })
        .collect();
    summarize(seed, results, started)
}

/// Runs the same checks on caller-supplied instances; trial `i` uses
/// `derive_seed(seed, i)` for its sampled certificates.
pub fn verify_instances(instances: &[Instance], eps: f64, n_dirs: usize, seed: u64) -> SweepSummary {
    let started = Instant::now();
    let results: Vec<TrialResult> = instances
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let trial_seed = dratio_core::derive_seed(seed, i as u64);
            (
                i as u64,
                trial_seed,
                evaluate(inst, eps, n_dirs, trial_seed).map_err(|e| e.to_string()),
            )
        })
        .collect();
    summarize(seed, results, started)
}
