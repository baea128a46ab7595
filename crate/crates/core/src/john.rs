//! John ellipsoid of a symmetric V-polytope.
//!
//! The origin-centred minimum-volume enclosing ellipsoid (MVEE) of
//! `{±g_j}` is computed by Khachiyan's barycentric coordinate ascent on the
//! D-optimal design problem `max log det Σ λ_j g_j g_jᵀ`. Shrinking it by
//! `1/√(m(1+eps))` gives an ellipsoid `E` with `E ⊆ K ⊆ √(m(1+eps))·E`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{Cholesky, DVector};

use crate::error::{Error, Result};
use crate::geometry::{Ellipsoid, SymmetricBody, VectorSet};
use crate::linalg::{self, Matrix};
use crate::sphere;

pub const DEFAULT_EPS: f64 = 1e-6;

/// Relative slack on the exact outer certificate.
pub const OUTER_SLACK: f64 = 1e-10;

/// Relative slack on the sampled inner certificate.
pub const INNER_SLACK: f64 = 1e-8;

/// `100 · k · m`.
pub fn default_max_iter(k: usize, m: usize) -> usize {
    100 * k * m
}

/// Approximate MVEE of a symmetric point set.
#[derive(Debug, Clone, PartialEq)]
pub struct Mvee {
    /// `{x : xᵀ M_out x ≤ 1}` with `M_out = H⁻¹ / (m(1+eps))`.
    pub ellipsoid: Ellipsoid,
    /// Design weights; non-negative, summing to one.
    pub weights: Vec<f64>,
    pub iterations: usize,
    /// `max_j g_jᵀH⁻¹g_j` at the final weights.
    pub max_kappa: f64,
    pub eps: f64,
}

fn design_matrix(points: &VectorSet, weights: &[f64]) -> Matrix {
    let m = points.dim();
    let mut h = Matrix::zeros(m, m);
    for (g, &w) in points.iter().zip(weights) {
        if w > 0.0 {
            let g = g.as_dvector();
            h.ger(w, g, g, 1.0);
        }
    }
    h
}

/// Khachiyan's algorithm for the origin-centred MVEE of `{±g_j}`.
///
/// Each iteration takes `κ_j = g_jᵀH⁻¹g_j` and moves weight toward the
/// point with the largest `κ` by the exact line-search step
/// `β = (κ − m) / (m(κ − 1))`. When the smallest `κ` among supported points
/// is further below `m` than the largest is above it, weight is moved away
/// from that point instead (a Wolfe-Atwood away step, clipped at zero
/// weight). The loop stops once `max_j κ_j ≤ m(1+eps)`.
pub fn mvee_symmetric(points: &VectorSet, eps: f64, max_iter: usize) -> Result<Mvee> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter("eps must be positive"));
    }
    let m = points.dim();
    let k = points.len();
    let rank = linalg::numerical_rank(&points.to_columns());
    if rank < m {
        return Err(Error::RankDeficient { dim: m, rank });
    }
    let mf = m as f64;
    let target = mf * (1.0 + eps);
    let mut weights = vec![1.0 / k as f64; k];
    let mut kappa = vec![0.0; k];

    let mut iter = 0;
    loop {
        let h = design_matrix(points, &weights);
        let chol = Cholesky::new(linalg::symmetrize(&h)).ok_or(Error::RankDeficient {
            dim: m,
            rank: linalg::numerical_rank(&h),
        })?;
        for (kj, g) in kappa.iter_mut().zip(points.iter()) {
            let g = g.as_dvector();
            *kj = g.dot(&chol.solve(g));
        }
        let (jmax, kmax) = argmax(&kappa);
        if kmax <= target {
            let hinv = chol.inverse();
            let ellipsoid = Ellipsoid::new(linalg::symmetrize(&(hinv / target)))?;
            return Ok(Mvee {
                ellipsoid,
                weights,
                iterations: iter,
                max_kappa: kmax,
                eps,
            });
        }
        if iter >= max_iter {
            return Err(Error::NotConverged {
                iterations: iter,
                gap: kmax / mf - 1.0,
            });
        }
        iter += 1;

        let (jmin, kmin) = kappa
            .iter()
            .zip(&weights)
            .enumerate()
            .filter(|(_, (_, &w))| w > 0.0)
            .map(|(j, (&kj, _))| (j, kj))
            .fold((usize::MAX, f64::INFINITY), |best, cur| {
                if cur.1 < best.1 {
                    cur
                } else {
                    best
                }
            });

        if kmax - mf >= mf - kmin {
            let beta = (kmax - mf) / (mf * (kmax - 1.0));
            step(&mut weights, jmax, beta);
        } else {
            let wj = weights[jmin];
            let floor = -wj / (1.0 - wj);
            let beta = if kmin > 1.0 {
                (kmin - mf) / (mf * (kmin - 1.0))
            } else {
                f64::NEG_INFINITY
            };
            if beta <= floor {
                step(&mut weights, jmin, floor);
                weights[jmin] = 0.0;
            } else {
                step(&mut weights, jmin, beta);
            }
        }
    }
}

/// `λ ← (1 − β)λ + β e_j`.
fn step(weights: &mut [f64], j: usize, beta: f64) {
    for w in weights.iter_mut() {
        *w *= 1.0 - beta;
    }
    weights[j] += beta;
}

fn argmax(xs: &[f64]) -> (usize, f64) {
    xs.iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
}

/// Inscribed John ellipsoid `E = {x : xᵀAᵀAx ≤ 1}` of a V-polytope with its
/// containment certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct JohnResult {
    pub inner: Ellipsoid,
    /// Symmetric positive-definite `A` with `AᵀA` equal to the shape of `E`.
    pub factor: Matrix,
    /// `A⁻¹`.
    pub factor_inv: Matrix,
    pub dim: usize,
    pub eps: f64,
    /// Every generator satisfies `gᵀ M_E g ≤ m(1+eps)(1 + 1e−10)`, i.e.
    /// `K ⊆ √(m(1+eps))·E`. Exact.
    pub outer_ok: bool,
    /// `support(E, u) ≤ support(K, u)(1 + 1e−8)` on `n_dirs` random
    /// directions. Probabilistic.
    pub inner_ok: bool,
    pub n_dirs: usize,
    pub weights: Vec<f64>,
    pub iterations: usize,
}

impl JohnResult {
    /// `√(m(1+eps))`, the outer scaling actually certified.
    pub fn outer_scale(&self) -> f64 {
        libm::sqrt(self.dim as f64 * (1.0 + self.eps))
    }
}

pub fn john_inscribed(
    body: &SymmetricBody,
    eps: f64,
    n_dirs: usize,
    rng_seed: u64,
) -> Result<JohnResult> {
    let poly = body.as_polytope().ok_or(Error::NotPolytope)?;
    let gens = poly.generators();
    let m = poly.dim();
    let mvee = mvee_symmetric(gens, eps, default_max_iter(gens.len(), m))?;
    let blowup = m as f64 * (1.0 + eps);
    let inner = Ellipsoid::new(mvee.ellipsoid.shape() * blowup)?;

    let limit = blowup * (1.0 + OUTER_SLACK);
    let outer_ok = gens.iter().all(|g| {
        let g = g.as_dvector();
        g.dot(&(inner.shape() * g)) <= limit
    });

    let mut rng = crate::rng_from_seed(rng_seed);
    let mut inner_ok = true;
    for _ in 0..n_dirs {
        let u = sphere::sample_sphere(m, &mut rng)?;
        if inner.support(&u) > poly.support(&u) * (1.0 + INNER_SLACK) {
            inner_ok = false;
        }
    }

    Ok(JohnResult {
        factor: inner.shape_sqrt().clone(),
        factor_inv: inner.shape_inv_sqrt().clone(),
        inner,
        dim: m,
        eps,
        outer_ok,
        inner_ok,
        n_dirs,
        weights: mvee.weights,
        iterations: mvee.iterations,
    })
}

/// `A⁻¹v` for every `v`; with symmetric `A` this is the paper-convention
/// row vector `vᵀA⁻¹` transposed.
pub fn transform_vectors(john: &JohnResult, vectors: &VectorSet) -> Vec<DVector<f64>> {
    vectors
        .iter()
        .map(|v| &john.factor_inv * v.as_dvector())
        .collect()
}
