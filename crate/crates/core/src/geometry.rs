//! Vectors, vector sets and symmetric origin-centred convex bodies.
//!
//! Two body representations are supported, both with exact support
//! functions:
//!
//! - [`VPolytope`]: `conv{±g₁, …, ±g_k}`, symmetric by construction.
//! - [`Ellipsoid`]: `{x : xᵀMx ≤ 1}` with `M` symmetric positive definite.
//!
//! All types are immutable once built and every operation is a pure
//! function of its inputs.

use alloc::vec::Vec;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SpdFactors};
use crate::simplex::{self, LpError};

/// Dense real coordinate vector with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(DVector<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Self::from_dvector(DVector::from_vec(coords))
    }

    pub fn from_dvector(coords: DVector<f64>) -> Result<Self> {
        if coords.iter().all(|x| x.is_finite()) {
            Ok(Self(coords))
        } else {
            Err(Error::NonFinite)
        }
    }

    /// The `i`-th standard basis vector of ℝᵐ.
    pub fn basis(m: usize, i: usize) -> Self {
        let mut v = DVector::zeros(m);
        v[i] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn into_dvector(self) -> DVector<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn scaled(&self, c: f64) -> Vector {
        Vector(&self.0 * c)
    }

    pub fn neg(&self) -> Vector {
        Vector(-&self.0)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(&self.0 + &other.0)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Non-empty list of nonzero vectors sharing one dimension `m ≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSet {
    dim: usize,
    vectors: Vec<Vector>,
}

impl VectorSet {
    pub fn new(vectors: Vec<Vector>) -> Result<Self> {
        let dim = vectors.first().ok_or(Error::Empty)?.dim();
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        for (i, v) in vectors.iter().enumerate() {
            check_dim(dim, v.dim())?;
            if v.is_zero() {
                return Err(Error::ZeroVector(i));
            }
        }
        Ok(Self { dim, vectors })
    }

    /// Convenience constructor from raw rows.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let vectors = rows
            .iter()
            .map(|r| Vector::new(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors)
    }

    /// `{e₁, …, e_m}`.
    pub fn standard_basis(m: usize) -> Result<Self> {
        Self::new((0..m).map(|i| Vector::basis(m, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Vector> {
        self.vectors.iter()
    }

    /// Applies `f` to every vector, re-validating the result.
    pub fn map(&self, f: impl Fn(&Vector) -> Vector) -> Result<Self> {
        Self::new(self.vectors.iter().map(f).collect())
    }

    /// The vectors as columns of an `m × n` matrix.
    pub fn to_columns(&self) -> Matrix {
        Matrix::from_fn(self.dim, self.len(), |i, j| self.vectors[j].as_slice()[i])
    }
}

/// `conv{±g₁, …, ±g_k}` for generators spanning ℝᵐ.
#[derive(Debug, Clone, PartialEq)]
pub struct VPolytope {
    generators: VectorSet,
}

impl VPolytope {
    pub fn new(generators: VectorSet) -> Result<Self> {
        let dim = generators.dim();
        if generators.len() < dim {
            return Err(Error::TooFewGenerators {
                dim,
                found: generators.len(),
            });
        }
        let rank = linalg::numerical_rank(&generators.to_columns());
        if rank < dim {
            return Err(Error::RankDeficient { dim, rank });
        }
        Ok(Self { generators })
    }

    /// `conv{±e₁, …, ±e_m}`, the unit ℓ₁ ball.
    pub fn cross_polytope(m: usize) -> Result<Self> {
        Self::new(VectorSet::standard_basis(m)?)
    }

    pub fn dim(&self) -> usize {
        self.generators.dim()
    }

    pub fn generators(&self) -> &VectorSet {
        &self.generators
    }

    pub fn support(&self, u: &Vector) -> f64 {
        self.generators
            .iter()
            .map(|g| g.dot(u).abs())
            .fold(0.0, f64::max)
    }

    /// Minkowski gauge `min{Σ|λ_j| : Σ λ_j g_j = x}`, solved as a linear
    /// program over the split `λ = λ⁺ − λ⁻`.
    pub fn gauge(&self, x: &Vector) -> Result<f64> {
        let m = self.dim();
        let k = self.generators.len();
        let mut a = alloc::vec![0.0; m * 2 * k];
        for (j, g) in self.generators.iter().enumerate() {
            for (i, &gi) in g.as_slice().iter().enumerate() {
                a[i * 2 * k + j] = gi;
                a[i * 2 * k + k + j] = -gi;
            }
        }
        let cost = alloc::vec![1.0; 2 * k];
        match simplex::minimize(&a, x.as_slice(), &cost) {
            Ok(sol) => Ok(sol.objective),
            Err(LpError::Infeasible) => Err(Error::Indeterminate(
                "membership program reported infeasible for a spanning generator set",
            )),
            Err(LpError::Unbounded) => {
                Err(Error::Indeterminate("membership program reported unbounded"))
            }
            Err(LpError::IterationLimit) => Err(Error::Indeterminate(
                "membership program hit its iteration limit",
            )),
        }
    }
}

/// `{x : xᵀMx ≤ 1}` with `M` symmetric positive definite.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    shape: Matrix,
    factors: SpdFactors,
}

impl Ellipsoid {
    pub fn new(shape: Matrix) -> Result<Self> {
        let m = shape.nrows();
        check_dim(m, shape.ncols())?;
        if m < 2 {
            return Err(Error::DimensionTooSmall(m));
        }
        if shape.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let asym = linalg::asymmetry(&shape);
        if asym > linalg::SYMMETRY_TOL * linalg::max_abs(&shape).max(1.0) {
            return Err(Error::NotSymmetric(asym));
        }
        let shape = linalg::symmetrize(&shape);
        let factors = linalg::spd_factors(&shape)?;
        Ok(Self { shape, factors })
    }

    /// The Euclidean ball of radius `r`.
    pub fn ball(m: usize, r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter("ball radius must be positive"));
        }
        Self::new(Matrix::identity(m, m) / (r * r))
    }

    pub fn dim(&self) -> usize {
        self.shape.nrows()
    }

    /// `M`.
    pub fn shape(&self) -> &Matrix {
        &self.shape
    }

    /// `M⁻¹`.
    pub fn shape_inv(&self) -> &Matrix {
        &self.factors.inv
    }

    /// `M^{1/2}`, the symmetric factor `A` with `AᵀA = M`.
    pub fn shape_sqrt(&self) -> &Matrix {
        &self.factors.sqrt
    }

    /// `M^{-1/2}`; maps the unit sphere onto the ellipsoid boundary.
    pub fn shape_inv_sqrt(&self) -> &Matrix {
        &self.factors.inv_sqrt
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.factors.eigenvalues
    }

    pub fn support(&self, u: &Vector) -> f64 {
        (self.shape_inv_sqrt() * u.as_dvector()).norm()
    }

    pub fn gauge(&self, x: &Vector) -> f64 {
        libm::sqrt(x.as_dvector().dot(&(&self.shape * x.as_dvector())).max(0.0))
    }
}

/// A symmetric, origin-centred, full-dimensional convex body.
#[derive(Debug, Clone, PartialEq)]
pub enum SymmetricBody {
    Polytope(VPolytope),
    Ellipsoid(Ellipsoid),
}

impl From<VPolytope> for SymmetricBody {
    fn from(p: VPolytope) -> Self {
        Self::Polytope(p)
    }
}

impl From<Ellipsoid> for SymmetricBody {
    fn from(e: Ellipsoid) -> Self {
        Self::Ellipsoid(e)
    }
}

impl SymmetricBody {
    pub fn dim(&self) -> usize {
        match self {
            Self::Polytope(p) => p.dim(),
            Self::Ellipsoid(e) => e.dim(),
        }
    }

    pub fn as_polytope(&self) -> Option<&VPolytope> {
        match self {
            Self::Polytope(p) => Some(p),
            Self::Ellipsoid(_) => None,
        }
    }

    pub fn as_ellipsoid(&self) -> Option<&Ellipsoid> {
        match self {
            Self::Ellipsoid(e) => Some(e),
            Self::Polytope(_) => None,
        }
    }

    /// `sup_{h∈K} uᵀh`, which equals `sup_{h∈K} |uᵀh|` by symmetry.
    pub fn support(&self, u: &Vector) -> Result<f64> {
        check_dim(self.dim(), u.dim())?;
        Ok(match self {
            Self::Polytope(p) => p.support(u),
            Self::Ellipsoid(e) => e.support(u),
        })
    }

    /// Minkowski gauge `inf{t ≥ 0 : x ∈ tK}`.
    pub fn gauge(&self, x: &Vector) -> Result<f64> {
        check_dim(self.dim(), x.dim())?;
        match self {
            Self::Polytope(p) => p.gauge(x),
            Self::Ellipsoid(e) => Ok(e.gauge(x)),
        }
    }

    /// Membership with slack: ellipsoids test `xᵀMx ≤ 1 + tol`, polytopes
    /// test `min Σ|λ_j| ≤ 1 + tol` over representations `x = Σ λ_j g_j`.
    pub fn contains(&self, x: &Vector, tol: f64) -> Result<bool> {
        if !(tol >= 0.0) {
            return Err(Error::InvalidParameter("tolerance must be non-negative"));
        }
        check_dim(self.dim(), x.dim())?;
        Ok(match self {
            Self::Polytope(p) => p.gauge(x)? <= 1.0 + tol,
            Self::Ellipsoid(e) => {
                x.as_dvector().dot(&(e.shape() * x.as_dvector())) <= 1.0 + tol
            }
        })
    }

    /// Image `B·K` with the default condition cap.
    pub fn linear_image(&self, b: &Matrix) -> Result<Self> {
        self.linear_image_with_cap(b, linalg::DEFAULT_CONDITION_CAP)
    }

    /// Image `B·K`: generators map to `Bg`, shape matrices to `B⁻ᵀMB⁻¹`.
    pub fn linear_image_with_cap(&self, b: &Matrix, condition_cap: f64) -> Result<Self> {
        let m = self.dim();
        check_dim(m, b.nrows())?;
        check_dim(m, b.ncols())?;
        let cond = linalg::condition_number(b);
        if !(cond <= condition_cap) {
            return Err(Error::IllConditioned(cond));
        }
        match self {
            Self::Polytope(p) => {
                let gens = p
                    .generators()
                    .iter()
                    .map(|g| Vector::from_dvector(b * g.as_dvector()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(VPolytope::new(VectorSet::new(gens)?)?.into())
            }
            Self::Ellipsoid(e) => {
                let binv = b.clone().try_inverse().ok_or(Error::IllConditioned(cond))?;
                let shape = binv.transpose() * e.shape() * &binv;
                Ok(Ellipsoid::new(linalg::symmetrize(&shape))?.into())
            }
        }
    }
}

pub fn support(body: &SymmetricBody, u: &Vector) -> Result<f64> {
    body.support(u)
}

pub fn contains(body: &SymmetricBody, x: &Vector, tol: f64) -> Result<bool> {
    body.contains(x, tol)
}

pub fn linear_image(body: &SymmetricBody, b: &Matrix) -> Result<SymmetricBody> {
    body.linear_image(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn diag(d: &[f64]) -> Matrix {
        Matrix::from_diagonal(&DVector::from_vec(d.to_vec()))
    }

    #[test]
    fn support_examples() {
        let cross: SymmetricBody = VPolytope::cross_polytope(3).unwrap().into();
        assert_eq!(cross.support(&Vector::basis(3, 0)).unwrap(), 1.0);
        let ball: SymmetricBody = Ellipsoid::ball(2, 1.0).unwrap().into();
        assert!((ball.support(&v(&[3.0, 4.0])).unwrap() - 5.0).abs() < 1e-14);
        let e: SymmetricBody = Ellipsoid::new(diag(&[1.0, 4.0])).unwrap().into();
        assert!((e.support(&v(&[0.0, 1.0])).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn support_dimension_mismatch() {
        let ball: SymmetricBody = Ellipsoid::ball(2, 1.0).unwrap().into();
        assert_eq!(
            ball.support(&v(&[1.0, 0.0, 0.0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn contains_examples() {
        let ball: SymmetricBody = Ellipsoid::ball(2, 1.0).unwrap().into();
        assert!(ball.contains(&v(&[0.6, 0.8]), 0.0).unwrap());
        let cross: SymmetricBody = VPolytope::cross_polytope(2).unwrap().into();
        assert!(!cross.contains(&v(&[0.6, 0.6]), 0.0).unwrap());
        let diamond: SymmetricBody =
            VPolytope::new(VectorSet::from_rows(&[&[1.0, 1.0], &[1.0, -1.0]]).unwrap())
                .unwrap()
                .into();
        assert!(diamond.contains(&v(&[1.0, 0.0]), 0.0).unwrap());
        assert!(diamond.contains(&v(&[1.0, 0.99]), 0.0).unwrap());
        assert!(!diamond.contains(&v(&[1.01, 0.0]), 0.0).unwrap());
        assert!(ball.contains(&v(&[0.6, 0.8]), -1.0).is_err());
    }

    #[test]
    fn gauge_of_polytope() {
        let cross = VPolytope::cross_polytope(3).unwrap();
        let g = cross.gauge(&v(&[0.5, -1.0, 2.0])).unwrap();
        assert!((g - 3.5).abs() < 1e-12);
        assert_eq!(cross.gauge(&v(&[0.0, 0.0, 0.0])).unwrap(), 0.0);
    }

    #[test]
    fn construction_rejects_invalid_input() {
        assert_eq!(Vector::new(vec![1.0, f64::NAN]), Err(Error::NonFinite));
        assert_eq!(
            VectorSet::from_rows(&[&[1.0, 0.0], &[0.0, 0.0]]),
            Err(Error::ZeroVector(1))
        );
        assert_eq!(VectorSet::new(vec![]), Err(Error::Empty));
        assert_eq!(
            VectorSet::from_rows(&[&[1.0]]),
            Err(Error::DimensionTooSmall(1))
        );
        let collinear = VectorSet::from_rows(&[&[1.0, 0.0], &[2.0, 0.0]]).unwrap();
        assert!(matches!(
            VPolytope::new(collinear),
            Err(Error::RankDeficient { dim: 2, rank: 1 })
        ));
        let one = VectorSet::from_rows(&[&[1.0, 0.0]]).unwrap();
        assert!(matches!(
            VPolytope::new(one),
            Err(Error::TooFewGenerators { .. })
        ));
        let asym = Matrix::from_row_slice(2, 2, &[1.0, 0.1, 0.0, 1.0]);
        assert!(matches!(Ellipsoid::new(asym), Err(Error::NotSymmetric(_))));
        assert!(matches!(
            Ellipsoid::new(diag(&[1.0, -1.0])),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn linear_image_examples() {
        let ball: SymmetricBody = Ellipsoid::ball(2, 1.0).unwrap().into();
        let img = ball.linear_image(&(Matrix::identity(2, 2) * 2.0)).unwrap();
        let e = img.as_ellipsoid().unwrap();
        assert!((e.shape() - Matrix::identity(2, 2) / 4.0).abs().max() < 1e-15);

        let c = libm::sqrt(0.5);
        let rot = Matrix::from_row_slice(2, 2, &[c, -c, c, c]);
        let cross: SymmetricBody = VPolytope::cross_polytope(2).unwrap().into();
        let img = cross.linear_image(&rot).unwrap();
        let gens = img.as_polytope().unwrap().generators();
        let expect = [[c, c], [-c, c]];
        for (g, e) in gens.iter().zip(expect) {
            assert!((g.as_slice()[0] - e[0]).abs() < 1e-15);
            assert!((g.as_slice()[1] - e[1]).abs() < 1e-15);
        }

        let singular = Matrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(
            ball.linear_image(&singular),
            Err(Error::IllConditioned(_))
        ));
    }
}
