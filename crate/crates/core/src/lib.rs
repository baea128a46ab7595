//! Numerics for the disagreement-coefficient ratio
//!
//! ```text
//!     Σ_v sup_{h∈K} |vᵀh|
//!   ──────────────────────  ≤  √(π / (2(1 − 1/m))) · m
//!     sup_{h∈K} Σ_v |vᵀh|
//! ```
//!
//! over symmetric, origin-centred convex bodies `K ⊂ ℝᵐ` and finite vector
//! sets `V`, together with the machinery needed to check every step of the
//! argument behind the bound: the John ellipsoid of a symmetric polytope,
//! the sphere-expectation constant `c_m`, and the cross-polytope witness on
//! which the ratio equals `m`.
//!
//! The crate is `no_std` (it needs `alloc`). IO, file formats, parallel
//! sweeps and the command line live in the `dratio` companion crate.
//!
//! - [`geometry`]: vectors, bodies, support functions, membership, linear images.
//! - [`john`]: minimum-volume enclosing ellipsoid and the inscribed John ellipsoid.
//! - [`ratio`]: numerator, exact denominator, bound, and the proof-chain check.
//! - [`sphere`]: `c_m`, uniform sphere sampling, Monte-Carlo expectation checks.
//! - [`instance`]: random instances and the cross-polytope witness.
//! - [`trial`]: single verification trials and hill-climbing steps.

#![no_std]
// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod geometry;
pub mod instance;
pub mod john;
pub mod linalg;
pub mod ratio;
pub mod simplex;
pub mod sphere;
pub mod trial;

pub use error::{Error, Result};
pub use geometry::{Ellipsoid, SymmetricBody, VPolytope, Vector, VectorSet};
pub use instance::{gen_instance, witness_remark2, BodyKind, Instance};
pub use john::{john_inscribed, mvee_symmetric, JohnResult, Mvee};
pub use ratio::{
    bound, chain_check, coefficient_bound, denominator, denominator_mc_lower, numerator, ratio,
    ChainReport, RatioReport,
};
pub use sphere::{baum_check, c_m, expected_abs_dot, sample_sphere, McEstimate};

/// Deterministic generator used for every stochastic routine.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Builds the crate's generator from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}

/// Derives an independent stream seed for sub-task `index` of a run seeded
/// with `seed`. The mapping is a SplitMix64 finalizer over both inputs, so
/// trial `i` of a sweep can be replayed from `derive_seed(seed, i)` alone.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(seed ^ mix(index))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_differ() {
        let a = derive_seed(7, 0);
        let b = derive_seed(7, 1);
        let c = derive_seed(8, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(7, 0));
    }
}
