//! Problem instances: a body `K` paired with a vector set `V`.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geometry::{Ellipsoid, SymmetricBody, VPolytope, Vector, VectorSet};
use crate::linalg::Matrix;

/// Regularization added to random ellipsoid shapes, `M = CᵀC + 1e−3·I`.
pub const ELLIPSOID_RIDGE: f64 = 1e-3;

const MAX_REDRAWS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum BodyKind {
    Polytope,
    Ellipsoid,
}

impl BodyKind {
    pub fn of(body: &SymmetricBody) -> Self {
        match body {
            SymmetricBody::Polytope(_) => Self::Polytope,
            SymmetricBody::Ellipsoid(_) => Self::Ellipsoid,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub body: SymmetricBody,
    pub vectors: VectorSet,
    pub label: Option<String>,
}

impl Instance {
    pub fn new(body: SymmetricBody, vectors: VectorSet, label: Option<String>) -> Result<Self> {
        if body.dim() != vectors.dim() {
            return Err(Error::DimensionMismatch {
                expected: body.dim(),
                found: vectors.dim(),
            });
        }
        Ok(Self {
            body,
            vectors,
            label,
        })
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn kind(&self) -> BodyKind {
        BodyKind::of(&self.body)
    }
}

fn normal_vector<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Vec<f64> {
    (0..m).map(|_| rng.sample(StandardNormal)).collect()
}

fn normal_set<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Result<VectorSet> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = Vector::new(normal_vector(m, rng))?;
        if !v.is_zero() {
            out.push(v);
        }
    }
    VectorSet::new(out)
}

/// Random instance: Gaussian generators (redrawn until they span ℝᵐ) or a
/// Gaussian ellipsoid shape `CᵀC + 1e−3·I`, and `n` Gaussian vectors.
/// Deterministic in `rng_seed`.
pub fn gen_instance(
    m: usize,
    k: usize,
    n: usize,
    kind: BodyKind,
    rng_seed: u64,
) -> Result<Instance> {
    let mut rng = crate::rng_from_seed(rng_seed);
    gen_instance_with(m, k, n, kind, &mut rng)
}

pub fn gen_instance_with<R: Rng + ?Sized>(
    m: usize,
    k: usize,
    n: usize,
    kind: BodyKind,
    rng: &mut R,
) -> Result<Instance> {
    if m < 2 {
        return Err(Error::DimensionTooSmall(m));
    }
    if k < m {
        return Err(Error::TooFewGenerators { dim: m, found: k });
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    let body: SymmetricBody = match kind {
        BodyKind::Polytope => {
            let mut last = Error::RankDeficient { dim: m, rank: 0 };
            let mut poly = None;
            for _ in 0..MAX_REDRAWS {
                match VPolytope::new(normal_set(m, k, rng)?) {
                    Ok(p) => {
                        poly = Some(p);
                        break;
                    }
                    Err(e) => last = e,
                }
            }
            poly.ok_or(last)?.into()
        }
        BodyKind::Ellipsoid => {
            let c = Matrix::from_vec(m, m, normal_vector(m * m, rng));
            let shape = c.transpose() * &c + Matrix::identity(m, m) * ELLIPSOID_RIDGE;
            Ellipsoid::new(shape)?.into()
        }
    };
    let vectors = normal_set(m, n, rng)?;
    Instance::new(body, vectors, None)
}

/// The cross-polytope `conv{±e₁, …, ±e_m}` with `V = {e₁, …, e_m}`; the
/// ratio on this instance is exactly `m`.
pub fn witness_remark2(m: usize) -> Result<Instance> {
    if m < 2 {
        return Err(Error::DimensionTooSmall(m));
    }
    Instance::new(
        VPolytope::cross_polytope(m)?.into(),
        VectorSet::standard_basis(m)?,
        Some(alloc::format!("cross-polytope witness, m = {m}")),
    )
}
