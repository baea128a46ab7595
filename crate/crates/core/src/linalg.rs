//! Dense linear-algebra helpers shared by the geometry and John modules.
//!
//! Every inverse and square root of a symmetric matrix goes through one
//! eigendecomposition, guarded by an eigenvalue floor.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;

/// Smallest admissible ratio λ_min / λ_max for a matrix we invert or root.
pub const EIGEN_FLOOR: f64 = 1e-10;

/// Construction-time tolerance on `|M_ij − M_ji|`, relative to `max(1, max|M|)`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Largest condition number accepted for a linear map.
pub const DEFAULT_CONDITION_CAP: f64 = 1e10;

/// Spectral functions of a symmetric positive-definite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdFactors {
    pub eigenvalues: nalgebra::DVector<f64>,
    pub sqrt: Matrix,
    pub inv: Matrix,
    pub inv_sqrt: Matrix,
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

pub fn asymmetry(m: &Matrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

pub fn symmetrize(m: &Matrix) -> Matrix {
    (m + m.transpose()) * 0.5
}

/// Eigen-decomposes a symmetric matrix and returns its square root, inverse
/// and inverse square root. Fails unless every eigenvalue is positive and the
/// spread stays above [`EIGEN_FLOOR`].
pub fn spd_factors(m: &Matrix) -> Result<SpdFactors> {
    let eig = SymmetricEigen::new(symmetrize(m));
    let lmax = eig.eigenvalues.max();
    let lmin = eig.eigenvalues.min();
    if !(lmin > 0.0) || !(lmin / lmax >= EIGEN_FLOOR) {
        let ratio = if lmax > 0.0 { lmin / lmax } else { lmin };
        return Err(Error::NotPositiveDefinite(ratio));
    }
    let q = &eig.eigenvectors;
    let apply = |f: &dyn Fn(f64) -> f64| {
        let d = Matrix::from_diagonal(&eig.eigenvalues.map(f));
        symmetrize(&(q * d * q.transpose()))
    };
    Ok(SpdFactors {
        sqrt: apply(&libm::sqrt),
        inv: apply(&|x| 1.0 / x),
        inv_sqrt: apply(&|x| 1.0 / libm::sqrt(x)),
        eigenvalues: eig.eigenvalues.clone(),
    })
}

/// Ratio of extreme singular values; `f64::INFINITY` for a singular matrix.
pub fn condition_number(b: &Matrix) -> f64 {
    let sv = b.clone().singular_values();
    let smax = sv.max();
    let smin = sv.min();
    if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    }
}

/// Number of singular values above `EIGEN_FLOOR · σ_max`.
pub fn numerical_rank(m: &Matrix) -> usize {
    let sv = m.clone().singular_values();
    let smax = sv.max();
    if !(smax > 0.0) {
        return 0;
    }
    sv.iter().filter(|&&s| s > smax * EIGEN_FLOOR).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_of_diagonal() {
        let m = Matrix::from_diagonal(&nalgebra::DVector::from_vec(alloc::vec![4.0, 9.0]));
        let f = spd_factors(&m).unwrap();
        assert!((f.sqrt[(0, 0)] - 2.0).abs() < 1e-14);
        assert!((f.sqrt[(1, 1)] - 3.0).abs() < 1e-14);
        assert!((f.inv[(1, 1)] - 1.0 / 9.0).abs() < 1e-15);
        assert!((f.inv_sqrt[(0, 0)] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_indefinite_and_nearly_singular() {
        let m = Matrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(spd_factors(&m), Err(Error::NotPositiveDefinite(_))));
        let m = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1e-12]);
        assert!(matches!(spd_factors(&m), Err(Error::NotPositiveDefinite(_))));
    }

    #[test]
    fn rank_and_condition() {
        let m = Matrix::from_row_slice(2, 3, &[1.0, 2.0, 0.0, 2.0, 4.0, 0.0]);
        assert_eq!(numerical_rank(&m), 1);
        let b = Matrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]);
        assert!((condition_number(&b) - 4.0).abs() < 1e-12);
        assert!(condition_number(&Matrix::zeros(2, 2)).is_infinite());
    }
}
