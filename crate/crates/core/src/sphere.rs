//! Uniform sampling on `S^{m−1}` and the expectation constant `c_m`.

use alloc::vec::Vec;

use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geometry::Vector;

/// Acceptance margin, in standard errors, for Monte-Carlo inequality checks.
pub const MC_SIGMAS: f64 = 5.0;

/// Smallest sample count accepted by [`expected_abs_dot`].
pub const MIN_SAMPLES: usize = 1000;

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        Err(Error::DimensionTooSmall(m))
    } else {
        Ok(())
    }
}

/// `c_m = √((2/π)(1 − 1/m))`.
pub fn c_m(m: usize) -> Result<f64> {
    check_m(m)?;
    Ok(libm::sqrt(2.0 / core::f64::consts::PI * (1.0 - 1.0 / m as f64)))
}

/// Uniform point on the unit sphere in ℝᵐ, drawn by normalizing independent
/// standard normals. An all-zero draw is resampled.
pub fn sample_sphere<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<Vector> {
    check_m(m)?;
    loop {
        let z: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
        let z = DVector::from_vec(z);
        let n = z.norm();
        if n > 0.0 {
            return Vector::from_dvector(z / n);
        }
    }
}

/// Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
    pub seed: u64,
}

/// Welford accumulator.
#[derive(Debug, Default, Clone, Copy)]
struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn estimate(&self, seed: u64) -> McEstimate {
        let var = if self.n > 1 {
            self.m2 / (self.n - 1) as f64
        } else {
            0.0
        };
        McEstimate {
            mean: self.mean,
            stderr: libm::sqrt(var / self.n as f64),
            n: self.n,
            seed,
        }
    }
}

/// Estimates `E[|uᵀh|]` for `h` uniform on the sphere with `u = e₁`.
pub fn expected_abs_dot(m: usize, n: usize, seed: u64) -> Result<McEstimate> {
    check_m(m)?;
    expected_abs_dot_along(&Vector::basis(m, 0), n, seed)
}

/// Estimates `E[|uᵀh|]` for an arbitrary unit vector `u`.
pub fn expected_abs_dot_along(u: &Vector, n: usize, seed: u64) -> Result<McEstimate> {
    let m = u.dim();
    check_m(m)?;
    if n < MIN_SAMPLES {
        return Err(Error::InvalidParameter("at least 1000 samples are required"));
    }
    if (u.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter("direction must have unit norm"));
    }
    let mut rng = crate::rng_from_seed(seed);
    let mut acc = Moments::default();
    for _ in 0..n {
        let h = sample_sphere(m, &mut rng)?;
        acc.push(h.dot(u).abs());
    }
    Ok(acc.estimate(seed))
}

/// Outcome of one expectation-inequality check.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BaumReport {
    pub m: usize,
    pub estimate: McEstimate,
    /// `c_m / √m`.
    pub lower: f64,
    /// `1/√m`, the Jensen upper bound.
    pub upper: f64,
    pub pass: bool,
}

/// Checks `E[|e₁ᵀh|] ≥ c_m/√m − 5·stderr` and reports both sides.
pub fn baum_report(m: usize, n: usize, seed: u64) -> Result<BaumReport> {
    let estimate = expected_abs_dot(m, n, seed)?;
    let root_m = libm::sqrt(m as f64);
    let lower = c_m(m)? / root_m;
    Ok(BaumReport {
        m,
        estimate,
        lower,
        upper: 1.0 / root_m,
        pass: estimate.mean >= lower - MC_SIGMAS * estimate.stderr,
    })
}

pub fn baum_check(m: usize, n: usize, seed: u64) -> Result<bool> {
    Ok(baum_report(m, n, seed)?.pass)
}
