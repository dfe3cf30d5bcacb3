//! Exact scalars, matrices and sparse tensors.

mod matrix;
mod modular;
mod scalar;
mod tensor;

pub use matrix::{Echelon, Matrix, SparseMatrix, SparseRow, SubspaceBuilder, DENSE_LIMIT};
pub use modular::solve_mod;
pub use scalar::{Field, Rational, Scalar};
pub use tensor::{SparseTensor, Tuple, MAX_ARITY};

pub(crate) use tensor::Accumulator;

/// Rank of `m` over its field.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// One exact solution of `m x = b` (free variables zero), or `None`.
pub fn solve(m: &Matrix, b: &[Scalar]) -> crate::Result<Option<Vec<Scalar>>> {
    m.solve(b)
}

/// See [`SparseTensor::contract`].
pub fn contract(a: &SparseTensor, b: &SparseTensor, pairs: &[(usize, usize)]) -> crate::Result<SparseTensor> {
    a.contract(b, pairs)
}
