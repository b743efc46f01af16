//! Sparse exact linear algebra over cyclotomic scalars.

mod echelon;
mod index;
mod op;
mod vector;

pub use echelon::{
    kernel_image, quotient_basis, solve_linear, LinearSystem, NotContained, Quotient, Subquotient, Subspace,
};
pub use index::{Basis, BasisIndex, Key, TENSOR_TAG};
pub use op::{map1, map2, LinOp, Map1, Map2, Matrix, ScalarMap};
pub use vector::FreeVector;

/// Default exponent window for infinite-dimensional families.
pub const DEFAULT_WINDOW: i64 = 4;
