//! Dense linear algebra over GF(2).

mod elim;
mod matrix;
mod vector;

pub use elim::{solve_affine, AffineSolver, Echelon};
pub use matrix::BitMatrix;
pub use vector::BitVector;
