//! Dense exact linear algebra over a cyclotomic field: rank and nullspace by
//! fraction-full Gaussian elimination. Matrices here are small (a few hundred
//! rows at most), so no pivoting heuristics beyond "first nonzero".

use crate::cyclotomic::CycNumber;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<CycNumber>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![CycNumber::zero(); rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNumber {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNumber) {
        self.data[r * self.cols + c] = v;
    }

    /// Row echelon form in place; returns pivot column indices.
    fn echelonize(&mut self) -> Result<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data
                        .swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).inverse()?;
            for c in col..self.cols {
                let v = self.get(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c).sub(&self.get(row, c).mul(&factor));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok(pivots)
    }

    pub fn rank(&self) -> Result<usize> {
        let mut m = self.clone();
        Ok(m.echelonize()?.len())
    }

    /// Basis of the right nullspace, as coordinate vectors.
    pub fn nullspace(&self) -> Result<Vec<Vec<CycNumber>>> {
        let mut m = self.clone();
        let pivots = m.echelonize()?;
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![CycNumber::zero(); self.cols];
            v[free] = CycNumber::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = m.get(prow, free).neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }
}
