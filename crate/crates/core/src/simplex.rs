//! Small dense two-phase simplex for `min cᵀy  s.t.  Ay = b, y ≥ 0`.
//!
//! Sized for membership tests against V-polytopes (a handful of rows, a few
//! dozen columns). Bland's rule is used throughout, so the method cannot
//! cycle; the iteration cap only guards against numerical trouble.

use alloc::vec;
use alloc::vec::Vec;

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpError {
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub objective: f64,
    pub x: Vec<f64>,
}

struct Tableau {
    rows: usize,
    /// Structural plus artificial columns; the right-hand side is stored separately.
    cols: usize,
    a: Vec<f64>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.cols + j]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.at(row, col);
        for j in 0..self.cols {
            self.a[row * self.cols + j] /= p;
        }
        self.rhs[row] /= p;
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let f = self.at(i, col);
            if f == 0.0 {
                continue;
            }
            for j in 0..self.cols {
                self.a[i * self.cols + j] -= f * self.a[row * self.cols + j];
            }
            self.rhs[i] -= f * self.rhs[row];
        }
        self.basis[row] = col;
    }

    /// Runs primal simplex for `cost` over columns `< allowed`.
    fn optimize(&mut self, cost: &[f64], allowed: usize, max_iter: usize) -> Result<(), LpError> {
        for _ in 0..max_iter {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = cost[j]
                    - (0..self.rows)
                        .map(|i| cost[self.basis[i]] * self.at(i, j))
                        .sum::<f64>();
                reduced < -COST_TOL
            });
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let aij = self.at(i, col);
                if aij > PIVOT_TOL {
                    let t = self.rhs[i] / aij;
                    leave = match leave {
                        None => Some((i, t)),
                        Some((r, best)) => {
                            if t < best - 1e-15
                                || (t <= best + 1e-15 && self.basis[i] < self.basis[r])
                            {
                                Some((i, t))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            let Some((row, _)) = leave else {
                return Err(LpError::Unbounded);
            };
            self.pivot(row, col);
        }
        Err(LpError::IterationLimit)
    }

    fn objective(&self, cost: &[f64]) -> f64 {
        (0..self.rows).map(|i| cost[self.basis[i]] * self.rhs[i]).sum()
    }
}

/// Solves `min cᵀy  s.t.  Ay = b, y ≥ 0` with `a` given row-major
/// (`b.len()` rows, `c.len()` columns).
pub fn minimize(a: &[f64], b: &[f64], c: &[f64]) -> Result<LpSolution, LpError> {
    let rows = b.len();
    let n = c.len();
    assert_eq!(a.len(), rows * n, "constraint matrix has the wrong size");
    let cols = n + rows;

    let mut t = Tableau {
        rows,
        cols,
        a: vec![0.0; rows * cols],
        rhs: vec![0.0; rows],
        basis: (n..cols).collect(),
    };
    for i in 0..rows {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t.a[i * cols + j] = sign * a[i * n + j];
        }
        t.a[i * cols + n + i] = 1.0;
        t.rhs[i] = sign * b[i];
    }
    let max_iter = 50 * (cols + rows).max(10);

    // Phase 1: drive the artificials to zero.
    let mut phase1 = vec![0.0; cols];
    phase1[n..].iter_mut().for_each(|x| *x = 1.0);
    t.optimize(&phase1, cols, max_iter)?;
    let scale = 1.0 + b.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if t.objective(&phase1) > 1e-9 * scale {
        return Err(LpError::Infeasible);
    }
    // Pivot remaining artificials out where possible; rows where that fails
    // are redundant and keep a zero-valued artificial in the basis.
    for i in 0..rows {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.basis.contains(&j) && t.at(i, j).abs() > 1e-9) {
                t.pivot(i, j);
            }
        }
    }

    // Phase 2: original costs, artificials barred from entering.
    let mut phase2 = vec![0.0; cols];
    phase2[..n].copy_from_slice(c);
    t.optimize(&phase2, n, max_iter)?;

    let mut x = vec![0.0; n];
    for i in 0..rows {
        if t.basis[i] < n {
            x[t.basis[i]] = t.rhs[i].max(0.0);
        }
    }
    let objective = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(LpSolution { objective, x })
}
