//! The ratio `Σ_v sup_K |vᵀh| / sup_K Σ_v |vᵀh|`, its closed-form bound,
//! and the two-link check of the argument behind that bound.
//!
//! The denominator maximizes a convex function over `K`, so it is computed
//! exactly only where the maximum can be enumerated: at the generators of a
//! V-polytope, or over sign patterns `s ∈ {±1}^n` for an ellipsoid, where
//! `sup_{h∈E} Σ|vᵀh| = max_s ‖M^{−1/2} Σ s_v v‖`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::geometry::{SymmetricBody, VectorSet};
use crate::john::{self, JohnResult};
use crate::sphere;

/// Largest `|V|` for sign enumeration (`2^21` patterns).
pub const DEFAULT_SIGN_CAP: usize = 22;

/// Absolute slack on the John-ellipsoid link of the chain.
pub const LINK_A_SLACK: f64 = 1e-8;

/// Absolute slack on the sphere-expectation link of the chain.
pub const LINK_B_SLACK: f64 = 1e-10;

fn check_dims(vectors: &VectorSet, body: &SymmetricBody) -> Result<()> {
    if vectors.dim() != body.dim() {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            found: vectors.dim(),
        });
    }
    Ok(())
}

/// `Σ_v support(K, v)`.
pub fn numerator(vectors: &VectorSet, body: &SymmetricBody) -> Result<f64> {
    check_dims(vectors, body)?;
    vectors.iter().map(|v| body.support(v)).sum()
}

/// `sup_{h∈K} Σ_v |vᵀh|` with the default sign-enumeration cap.
pub fn denominator(vectors: &VectorSet, body: &SymmetricBody) -> Result<f64> {
    denominator_with_cap(vectors, body, DEFAULT_SIGN_CAP)
}

pub fn denominator_with_cap(
    vectors: &VectorSet,
    body: &SymmetricBody,
    sign_cap: usize,
) -> Result<f64> {
    check_dims(vectors, body)?;
    match body {
        SymmetricBody::Polytope(p) => Ok(p
            .generators()
            .iter()
            .map(|g| vectors.iter().map(|v| v.dot(g).abs()).sum::<f64>())
            .fold(0.0, f64::max)),
        SymmetricBody::Ellipsoid(e) => {
            let ws: Vec<DVector<f64>> = vectors
                .iter()
                .map(|v| e.shape_inv_sqrt() * v.as_dvector())
                .collect();
            max_signed_sum_norm(&ws, sign_cap)
        }
    }
}

/// `max_{s∈{±1}^n} ‖Σ_i s_i w_i‖₂`.
///
/// Walks the `2^{n−1}` patterns with `s₀ = +1` in Gray-code order, updating
/// the running sum by one flip per step, then re-evaluates the winning
/// pattern from scratch so the reported value carries no accumulated drift.
pub fn max_signed_sum_norm(ws: &[DVector<f64>], sign_cap: usize) -> Result<f64> {
    let n = ws.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > sign_cap || n > 63 {
        return Err(Error::SignCapExceeded { n, cap: sign_cap });
    }
    let m = ws[0].len();
    let mut sum = vec![0.0; m];
    for w in ws {
        for (s, x) in sum.iter_mut().zip(w.iter()) {
            *s += x;
        }
    }
    let mut signs = vec![1.0_f64; n];
    let mut mask: u64 = 0;
    let mut best_mask: u64 = 0;
    let mut best = sum.iter().map(|x| x * x).sum::<f64>();
    for t in 1..(1u64 << (n - 1)) {
        let i = t.trailing_zeros() as usize + 1;
        let f = -2.0 * signs[i];
        for (s, x) in sum.iter_mut().zip(ws[i].iter()) {
            *s += f * x;
        }
        signs[i] = -signs[i];
        mask ^= 1 << i;
        let q = sum.iter().map(|x| x * x).sum::<f64>();
        if q > best {
            best = q;
            best_mask = mask;
        }
    }
    let mut exact = DVector::zeros(m);
    for (i, w) in ws.iter().enumerate() {
        if best_mask & (1 << i) != 0 {
            exact -= w;
        } else {
            exact += w;
        }
    }
    Ok(exact.norm())
}

/// Lower bound on the denominator from `n_samples` random boundary points
/// `h = u / gauge(u)`, `u` uniform on the sphere. Never exceeds the exact
/// value; use it when `|V|` is beyond the sign-enumeration cap.
pub fn denominator_mc_lower(
    vectors: &VectorSet,
    body: &SymmetricBody,
    n_samples: usize,
    rng_seed: u64,
) -> Result<f64> {
    check_dims(vectors, body)?;
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be at least 1"));
    }
    let m = body.dim();
    let mut rng = crate::rng_from_seed(rng_seed);
    let mut best = 0.0_f64;
    for _ in 0..n_samples {
        let u = sphere::sample_sphere(m, &mut rng)?;
        let h = match body {
            SymmetricBody::Ellipsoid(e) => e.shape_inv_sqrt() * u.as_dvector(),
            SymmetricBody::Polytope(p) => match p.gauge(&u) {
                Ok(g) if g > 0.0 => u.as_dvector() / g,
                // An indeterminate gauge only costs this sample.
                _ => continue,
            },
        };
        let value: f64 = vectors.iter().map(|v| v.as_dvector().dot(&h).abs()).sum();
        best = best.max(value);
    }
    Ok(best)
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        Err(Error::DimensionTooSmall(m))
    } else {
        Ok(())
    }
}

/// `√(π / (2(1 − 1/m))) · m`.
pub fn bound(m: usize) -> Result<f64> {
    check_m(m)?;
    let mf = m as f64;
    Ok(libm::sqrt(core::f64::consts::PI / (2.0 * (1.0 - 1.0 / mf))) * mf)
}

/// Bound on the limiting disagreement coefficient, `2 · bound(m)`.
pub fn coefficient_bound(m: usize) -> Result<f64> {
    Ok(2.0 * bound(m)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RatioReport {
    pub m: usize,
    pub n_vectors: usize,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
    /// Limiting disagreement coefficient, `2 · ratio`.
    pub coefficient: f64,
    pub bound: f64,
    pub coefficient_bound: f64,
    /// `bound − ratio`; negative only if the bound is violated.
    pub slack: f64,
}

impl RatioReport {
    pub fn within_bound(&self) -> bool {
        self.ratio <= self.bound
    }
}

pub fn ratio(vectors: &VectorSet, body: &SymmetricBody) -> Result<RatioReport> {
    let m = body.dim();
    let bound = bound(m)?;
    let numerator = numerator(vectors, body)?;
    let denominator = denominator(vectors, body)?;
    let ratio = numerator / denominator;
    Ok(RatioReport {
        m,
        n_vectors: vectors.len(),
        numerator,
        denominator,
        ratio,
        coefficient: 2.0 * ratio,
        bound,
        coefficient_bound: 2.0 * bound,
        slack: bound - ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChainReport {
    /// The ratio over `K`.
    pub lhs_ratio: f64,
    /// `Σ_v ‖A⁻¹v‖`.
    pub transformed_norm_sum: f64,
    /// `max_s ‖Σ_v s_v A⁻¹v‖`, the denominator over the unit ball.
    pub sphere_denominator: f64,
    pub sphere_ratio: f64,
    /// `lhs_ratio ≤ √(m(1+eps))·sphere_ratio + 1e−8`.
    pub sqrt_m_bound_ok: bool,
    /// `sphere_denominator ≥ (c_m/√m)·Σ‖A⁻¹v‖ − 1e−10`.
    pub baum_link_ok: bool,
    /// Right side minus left side of the first link.
    pub link_a_slack: f64,
    /// Left side minus right side of the second link.
    pub link_b_slack: f64,
    pub eps_used: f64,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.sqrt_m_bound_ok && self.baum_link_ok
    }
}

/// Checks both reduction steps: from `K` to its John ellipsoid (a loss of at
/// most `√(m(1+eps))`), and from the sup over the sphere to the uniform
/// expectation (at least `c_m/√m` per vector).
pub fn chain_check(
    vectors: &VectorSet,
    body: &SymmetricBody,
    john: &JohnResult,
) -> Result<ChainReport> {
    if body.as_polytope().is_none() {
        return Err(Error::NotPolytope);
    }
    check_dims(vectors, body)?;
    if john.dim != body.dim() {
        return Err(Error::DimensionMismatch {
            expected: body.dim(),
            found: john.dim,
        });
    }
    let m = body.dim();
    let lhs_ratio = ratio(vectors, body)?.ratio;
    let ws = john::transform_vectors(john, vectors);
    let transformed_norm_sum: f64 = ws.iter().map(|w| w.norm()).sum();
    let sphere_denominator = max_signed_sum_norm(&ws, DEFAULT_SIGN_CAP)?;
    let sphere_ratio = transformed_norm_sum / sphere_denominator;

    let link_a_slack = john.outer_scale() * sphere_ratio + LINK_A_SLACK - lhs_ratio;
    let baum_rhs = sphere::c_m(m)? / libm::sqrt(m as f64) * transformed_norm_sum;
    let link_b_slack = sphere_denominator - baum_rhs + LINK_B_SLACK;
    Ok(ChainReport {
        lhs_ratio,
        transformed_norm_sum,
        sphere_denominator,
        sphere_ratio,
        sqrt_m_bound_ok: link_a_slack >= 0.0,
        baum_link_ok: link_b_slack >= 0.0,
        link_a_slack,
        link_b_slack,
        eps_used: john.eps,
    })
}
