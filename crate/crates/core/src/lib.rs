//! Exact computer algebra for crossed products `B #_σ H` of Hopf algebras and
//! the covariant differential calculi built on them.

pub mod crossed;
pub mod crossed_calc;
pub mod examples;
pub mod fodc;
pub mod hopf;
pub mod linalg;
pub mod qpb;
pub mod report;
pub mod scalars;

pub use linalg::{Basis, BasisIndex, FreeVector, LinOp, Subspace};
pub use report::{CheckReport, Status};
pub use scalars::CycScalar;
