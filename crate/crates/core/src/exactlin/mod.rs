//! Exact linear algebra over `Q` and `F_p`.

mod field;
mod matrix;
mod reduce;

pub use field::{FieldSpec, Scalar};
pub use matrix::Matrix;
pub use reduce::{
    determinant, find_invertible_combination, image_basis, intertwiners, inverse, is_invertible, kernel_basis,
    rank, rref, solve, QuotientSpace, Subspace,
};

/// Kronecker product of two matrices.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kron(b)
}
