//! Dense-tableau primal simplex with Bland's rule.
//!
//! Solves `maximize c·x subject to A x <= b, x >= 0` with `b >= 0`, so the
//! slack basis is feasible and no first phase is needed. Bland's rule (lowest
//! eligible index enters, ties in the ratio test leave by lowest basic index)
//! guarantees termination under degeneracy.

use crate::error::{Error, Result};

const EPS: f64 = 1e-12;

/// Upper bound on pivots before the solver gives up.
pub const MAX_PIVOTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub pivots: usize,
}

/// Row-major constraint matrix.
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }
}

pub fn maximize(c: &[f64], a: &DenseMatrix, b: &[f64]) -> Result<LpSolution> {
    let (m, nvar) = (a.rows, a.cols);
    if c.len() != nvar || b.len() != m {
        return Err(Error::Solver("inconsistent LP dimensions".into()));
    }
    if b.iter().any(|&v| v < 0.0) {
        return Err(Error::Solver("right-hand side must be nonnegative".into()));
    }

    // columns: structural 0..nvar, slacks nvar..nvar+m, rhs last
    let width = nvar + m + 1;
    let rhs = width - 1;
    let mut t = vec![0.0; (m + 1) * width];
    for r in 0..m {
        let row = &mut t[r * width..(r + 1) * width];
        row[..nvar].copy_from_slice(&a.data[r * nvar..(r + 1) * nvar]);
        row[nvar + r] = 1.0;
        row[rhs] = b[r];
    }
    // objective row holds reduced costs -c; optimal when all >= 0
    let obj = m * width;
    for j in 0..nvar {
        t[obj + j] = -c[j];
    }
    let mut basis: Vec<usize> = (nvar..nvar + m).collect();

    let mut pivots = 0;
    loop {
        let Some(enter) = (0..nvar + m).find(|&j| t[obj + j] < -EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..m {
            let coef = t[r * width + enter];
            if coef <= EPS {
                continue;
            }
            let ratio = t[r * width + rhs] / coef;
            leave = match leave {
                None => Some((r, ratio)),
                Some((lr, lratio)) => {
                    if ratio < lratio || (ratio == lratio && basis[r] < basis[lr]) {
                        Some((r, ratio))
                    } else {
                        Some((lr, lratio))
                    }
                }
            };
        }
        let Some((pr, _)) = leave else {
            return Err(Error::Solver("linear program is unbounded".into()));
        };
        pivot(&mut t, width, m + 1, pr, enter);
        basis[pr] = enter;
        pivots += 1;
        if pivots > MAX_PIVOTS {
            return Err(Error::Solver(format!("simplex exceeded {MAX_PIVOTS} pivots")));
        }
    }

    let mut x = vec![0.0; nvar];
    for (r, &var) in basis.iter().enumerate() {
        if var < nvar {
            x[var] = t[r * width + rhs];
        }
    }
    Ok(LpSolution {
        x,
        objective: t[obj + rhs],
        pivots,
    })
}

fn pivot(t: &mut [f64], width: usize, rows: usize, pr: usize, pc: usize) {
    let inv = 1.0 / t[pr * width + pc];
    let (head, rest) = t.split_at_mut(pr * width);
    let (prow, tail) = rest.split_at_mut(width);
    for v in prow.iter_mut() {
        *v *= inv;
    }
    prow[pc] = 1.0;
    // only columns where the pivot row is nonzero change
    let nz: Vec<usize> = (0..width).filter(|&j| prow[j] != 0.0).collect();
    let mut eliminate = |row: &mut [f64]| {
        let factor = row[pc];
        if factor != 0.0 {
            for &j in &nz {
                row[j] -= factor * prow[j];
            }
            row[pc] = 0.0;
        }
    };
    head.chunks_exact_mut(width).for_each(&mut eliminate);
    tail.chunks_exact_mut(width).take(rows - pr - 1).for_each(&mut eliminate);
}
