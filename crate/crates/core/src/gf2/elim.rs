//! Gauss–Jordan elimination and everything built on it: rank, inversion,
//! kernels, and uniform sampling of affine solution sets.

use crate::error::{Error, Result};
use crate::prng::PrngStream;

use super::{BitMatrix, BitVector};

/// Reduced row echelon form `R = T · A` together with the row-operation
/// matrix `T` and the pivot column of each nonzero row of `R`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: BitMatrix,
    pub transform: BitMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl BitMatrix {
    pub fn echelon(&self) -> Echelon {
        let mut rows: Vec<BitVector> = self.row_vectors().to_vec();
        let mut ops: Vec<BitVector> = BitMatrix::identity(self.rows()).row_vectors().to_vec();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols() {
            if next == rows.len() {
                break;
            }
            let Some(p) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            ops.swap(next, p);
            let (pivot_row, pivot_op) = (rows[next].clone(), ops[next].clone());
            for r in 0..rows.len() {
                if r != next && rows[r].get(col) {
                    rows[r] ^= &pivot_row;
                    ops[r] ^= &pivot_op;
                }
            }
            pivots.push(col);
            next += 1;
        }
        let reduced = if rows.is_empty() {
            BitMatrix::zeros(0, self.cols())
        } else {
            BitMatrix::from_rows(rows).expect("rows keep their length")
        };
        let transform = if ops.is_empty() {
            BitMatrix::zeros(0, 0)
        } else {
            BitMatrix::from_rows(ops).expect("rows keep their length")
        };
        Echelon {
            reduced,
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn invert(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows(),
                self.cols()
            )));
        }
        let ech = self.echelon();
        if ech.rank() < self.rows() {
            return Err(Error::Singular {
                rank: ech.rank(),
                size: self.rows(),
            });
        }
        Ok(ech.transform)
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        kernel_from_echelon(&self.echelon(), self.cols())
    }
}

fn kernel_from_echelon(ech: &Echelon, cols: usize) -> Vec<BitVector> {
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVector::zeros(cols);
            v.set(free, true);
            for (i, &p) in ech.pivots.iter().enumerate() {
                if ech.reduced.get(i, free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Precomputed solver for `x · hᵀ = target` (i.e. `h · x = target`).
///
/// Solutions are `particular(target) ⊕ Σ cᵢ·kernelᵢ`; the particular solution
/// sets every free variable to zero.
#[derive(Clone, Debug)]
pub struct AffineSolver {
    rows: usize,
    cols: usize,
    transform: BitMatrix,
    pivots: Vec<usize>,
    kernel: Vec<BitVector>,
}

impl AffineSolver {
    pub fn new(h: &BitMatrix) -> Self {
        let ech = h.echelon();
        let kernel = kernel_from_echelon(&ech, h.cols());
        Self {
            rows: h.rows(),
            cols: h.cols(),
            transform: ech.transform,
            pivots: ech.pivots,
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> &[BitVector] {
        &self.kernel
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn particular(&self, target: &BitVector) -> Result<BitVector> {
        if target.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "target of length {} for a system with {} equations",
                target.len(),
                self.rows
            )));
        }
        let reduced_target = if self.rows == 0 {
            BitVector::zeros(0)
        } else {
            self.transform.mul_vec(target)?
        };
        if (self.rank()..self.rows).any(|i| reduced_target.get(i)) {
            return Err(Error::NoSolution);
        }
        let mut x = BitVector::zeros(self.cols);
        for (i, &p) in self.pivots.iter().enumerate() {
            if reduced_target.get(i) {
                x.set(p, true);
            }
        }
        Ok(x)
    }

    /// The solution selected by explicit kernel coefficients.
    pub fn solve_with_coefficients(
        &self,
        target: &BitVector,
        coefficients: &BitVector,
    ) -> Result<BitVector> {
        if coefficients.len() != self.kernel.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} kernel coefficients for a kernel of dimension {}",
                coefficients.len(),
                self.kernel.len()
            )));
        }
        let mut x = self.particular(target)?;
        for i in coefficients.ones_iter() {
            x ^= &self.kernel[i];
        }
        Ok(x)
    }

    /// A solution drawn uniformly from the solution set.
    pub fn solve(&self, target: &BitVector, rng: &mut PrngStream) -> Result<BitVector> {
        let coefficients = rng.next_bits(self.kernel.len());
        self.solve_with_coefficients(target, &coefficients)
    }
}

/// Uniformly random `x` with `x · hᵀ = target`.
pub fn solve_affine(h: &BitMatrix, target: &BitVector, rng: &mut PrngStream) -> Result<BitVector> {
    AffineSolver::new(h).solve(target, rng)
}
