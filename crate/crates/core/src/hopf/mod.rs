//! Hopf algebras, comodule algebras, and the concrete families used by the
//! worked examples.

mod algebra;
mod builders;
mod comodule;
mod convolution;
mod hopf_data;
mod radford;
mod text;
mod torus;

pub use algebra::{check_algebra, AlgebraPresentation};
pub use builders::{
    build_group_algebra, build_laurent_hopf, cyclic_table, finite_hopf, group_index, laurent_index, laurent_ring,
};
pub use comodule::{check_comodule_algebra, CoinvariantFamily, ComoduleAlgebra};
pub use convolution::{convolution_inverse, convolve};
pub use hopf_data::{check_hopf_axioms, invert_on_basis, table_map, Coalgebra, HopfData};
pub use radford::{build_radford, radford_index, Radford};
pub use text::{hopf_to_text, parse_hopf_text, text_index, ParsedHopf};
pub use torus::{build_torus_comodule, torus_algebra, torus_index, uv_power, TorusComodule};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("antipode equation has no solution on generator {0}")]
    NoAntipode(String),
    #[error("not invertible at {0}")]
    NotInvertible(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
