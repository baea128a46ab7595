//! Expectation-inequality checks across dimensions.

use dratio_core::derive_seed;
use dratio_core::sphere::{baum_report, BaumReport};
use rayon::prelude::*;

/// Checks every `m ∈ {2, …, m_max}` with `samples` draws each; dimension `m`
/// uses `derive_seed(seed, m)`.
pub fn baum_sweep(m_max: usize, samples: usize, seed: u64) -> dratio_core::Result<Vec<BaumReport>> {
    if m_max < 2 {
        return Err(dratio_core::Error::DimensionTooSmall(m_max));
    }
    (2..=m_max)
        .into_par_iter()
        .map(|m| baum_report(m, samples, derive_seed(seed, m as u64)))
        .collect()
}
