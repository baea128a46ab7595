//! Single verification trials and hill-climbing on the ratio.
//!
//! Parallel drivers and aggregation live in the `dratio` crate; everything
//! here is a deterministic function of its seed.

use alloc::vec::Vec;

use rand::{Rng, RngCore};
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geometry::{SymmetricBody, VPolytope, Vector, VectorSet};
use crate::instance::{gen_instance, witness_remark2, BodyKind, Instance};
use crate::john::john_inscribed;
use crate::ratio::{chain_check, ratio, ChainReport, RatioReport};

/// Shape of the random instances drawn by a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub min_dim: usize,
    pub max_dim: usize,
    pub kinds: Vec<BodyKind>,
    pub max_vectors: usize,
    /// Directions sampled for the inner John certificate.
    pub n_dirs: usize,
    pub eps: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            min_dim: 2,
            max_dim: 8,
            kinds: alloc::vec![BodyKind::Polytope, BodyKind::Ellipsoid],
            max_vectors: 12,
            n_dirs: 200,
            eps: crate::john::DEFAULT_EPS,
        }
    }
}

/// Draws instance `index` of a sweep. Returns the derived seed that replays it
/// through [`replay_instance`].
pub fn sweep_instance(spec: &SweepSpec, seed: u64, index: u64) -> Result<(u64, Instance)> {
    let derived = crate::derive_seed(seed, index);
    Ok((derived, replay_instance(spec, derived)?))
}

pub fn replay_instance(spec: &SweepSpec, derived: u64) -> Result<Instance> {
    if spec.min_dim > spec.max_dim || spec.kinds.is_empty() || spec.max_vectors == 0 {
        return Err(Error::InvalidParameter("empty sweep specification"));
    }
    let mut rng = crate::rng_from_seed(derived);
    let m = rng.random_range(spec.min_dim..=spec.max_dim);
    let kind = spec.kinds[rng.random_range(0..spec.kinds.len())];
    let k = rng.random_range(m..=2 * m);
    let n = rng.random_range(1..=spec.max_vectors);
    gen_instance(m, k, n, kind, rng.next_u64())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub seed: u64,
    pub kind: BodyKind,
    pub report: RatioReport,
    /// Polytope bodies only.
    pub chain: Option<ChainReport>,
    /// Both John certificates held (polytope bodies only).
    pub john_ok: Option<bool>,
}

impl TrialOutcome {
    pub fn eq1_ok(&self) -> bool {
        self.report.within_bound()
    }

    /// Both chain links and both John certificates held; vacuous for ellipsoids.
    pub fn chain_ok(&self) -> bool {
        self.chain.is_none_or(|c| c.passed()) && self.john_ok.unwrap_or(true)
    }

    pub fn ratio_over_m(&self) -> f64 {
        self.report.ratio / self.report.m as f64
    }

    pub fn ratio_over_bound(&self) -> f64 {
        self.report.ratio / self.report.bound
    }
}

/// Ratio report, and for polytopes the John ellipsoid and chain check.
pub fn evaluate(instance: &Instance, eps: f64, n_dirs: usize, seed: u64) -> Result<TrialOutcome> {
    let report = ratio(&instance.vectors, &instance.body)?;
    let (chain, john_ok) = match &instance.body {
        SymmetricBody::Polytope(_) => {
            let john = john_inscribed(&instance.body, eps, n_dirs, seed)?;
            let chain = chain_check(&instance.vectors, &instance.body, &john)?;
            (Some(chain), Some(john.outer_ok && john.inner_ok))
        }
        SymmetricBody::Ellipsoid(_) => (None, None),
    };
    Ok(TrialOutcome {
        seed,
        kind: instance.kind(),
        report,
        chain,
        john_ok,
    })
}

/// Starting point for restart `restart` of a ratio search: the cross-polytope
/// witness (padded with interior generators up to `k`) for restart 0 when
/// `n == m`, a Gaussian polytope instance otherwise.
pub fn search_start(m: usize, k: usize, n: usize, restart: u64, seed: u64) -> Result<Instance> {
    if restart == 0 && n == m && k >= m {
        let w = witness_remark2(m)?;
        let mut gens: Vec<Vector> = w.body.as_polytope().unwrap().generators().vectors().to_vec();
        for j in 0..(k - m) {
            gens.push(Vector::basis(m, j % m).scaled(0.5));
        }
        return Instance::new(VPolytope::new(VectorSet::new(gens)?)?.into(), w.vectors, w.label);
    }
    gen_instance(m, k, n, BodyKind::Polytope, crate::derive_seed(seed, restart))
}

fn perturb<R: Rng + ?Sized>(set: &VectorSet, step: f64, rng: &mut R) -> Result<VectorSet> {
    let vectors = set
        .iter()
        .map(|v| {
            let coords = v
                .as_slice()
                .iter()
                .map(|&x| x + step * rng.sample::<f64, _>(StandardNormal))
                .collect();
            Vector::new(coords)
        })
        .collect::<Result<Vec<_>>>()?;
    VectorSet::new(vectors)
}

/// Random-restart building block: perturbs every generator and vector by
/// independent Gaussian steps of scale `step_size` and keeps the candidate
/// only if the ratio strictly increases. The ratio therefore never drops
/// below its starting value.
///
/// Fails with [`Error::BoundViolated`] if the ratio ever exceeds its bound.
pub fn climb(
    start: Instance,
    steps: usize,
    step_size: f64,
    seed: u64,
) -> Result<(Instance, RatioReport)> {
    if !(step_size > 0.0) {
        return Err(Error::InvalidParameter("step size must be positive"));
    }
    let poly = start.body.as_polytope().ok_or(Error::NotPolytope)?;
    let mut gens = poly.generators().clone();
    let mut vectors = start.vectors.clone();
    let mut best = ratio(&vectors, &start.body)?;
    let mut rng = crate::rng_from_seed(seed);
    for _ in 0..steps {
        let cand_gens = perturb(&gens, step_size, &mut rng);
        let cand_vecs = perturb(&vectors, step_size, &mut rng);
        let (Ok(cg), Ok(cv)) = (cand_gens, cand_vecs) else {
            continue;
        };
        let Ok(body) = VPolytope::new(cg.clone()) else {
            continue;
        };
        let Ok(report) = ratio(&cv, &body.into()) else {
            continue;
        };
        if report.ratio > best.ratio {
            gens = cg;
            vectors = cv;
            best = report;
        }
    }
    if !best.within_bound() {
        return Err(Error::BoundViolated {
            dim: best.m,
            ratio: best.ratio,
            bound: best.bound,
            seed,
        });
    }
    let body = VPolytope::new(gens)?.into();
    Ok((Instance::new(body, vectors, start.label)?, best))
}
