//! Measures, 2-cocycles, crossed products B #_σ H, cleft extensions and the
//! Hopf–Galois canonical map.

mod cleft;
mod galois;
mod product;
mod twisted;

use crate::hopf::{AlgebraPresentation, HopfData};
use crate::linalg::{BasisIndex, FreeVector, Map2};

pub use cleft::{cleft_to_crossed, CleftCrossed, CleftData, Retraction};
pub use galois::check_hopf_galois;
pub use product::{build_crossed_product, crossed_index, CrossedProduct};
pub use twisted::check_twisted_module_algebra;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CrossedError {
    #[error("precondition '{check}' failed: {witness}")]
    Precondition { check: String, witness: String },
    #[error("derived value is not coinvariant: {0}")]
    NotCoinvariant(String),
    #[error(transparent)]
    Hopf(#[from] crate::hopf::HopfError),
}

/// A left action h ⊗ b ↦ h·b of H on B, on basis indices.
#[derive(Clone)]
pub struct Measure {
    pub act: Map2,
}

impl Measure {
    pub fn new(act: impl Fn(&BasisIndex, &BasisIndex) -> FreeVector + Send + Sync + 'static) -> Self {
        Measure { act: std::sync::Arc::new(act) }
    }

    /// h ⊗ b ↦ ε(h) b.
    pub fn trivial(h: &HopfData) -> Self {
        let h = h.clone();
        Measure::new(move |x, b| FreeVector::term(b.clone(), h.eps_idx(x)))
    }

    pub fn apply(&self, h: &FreeVector, b: &FreeVector) -> FreeVector {
        h.bilinear(b, |x, y| (self.act)(x, y))
    }
}

/// σ: H⊗H → B together with its convolution inverse.
#[derive(Clone)]
pub struct Cocycle {
    pub sigma: Map2,
    pub sigma_inv: Map2,
}

impl Cocycle {
    pub fn new(
        sigma: impl Fn(&BasisIndex, &BasisIndex) -> FreeVector + Send + Sync + 'static,
        sigma_inv: impl Fn(&BasisIndex, &BasisIndex) -> FreeVector + Send + Sync + 'static,
    ) -> Self {
        Cocycle { sigma: std::sync::Arc::new(sigma), sigma_inv: std::sync::Arc::new(sigma_inv) }
    }

    /// σ(h⊗h') = ε(h)ε(h')1.
    pub fn trivial(h: &HopfData, b: &AlgebraPresentation) -> Self {
        let (h1, one) = (h.clone(), b.one());
        let f = move |x: &BasisIndex, y: &BasisIndex| one.scale(&h1.eps_idx(x).mul(&h1.eps_idx(y)));
        Cocycle::new(f.clone(), f)
    }

    pub fn apply(&self, h: &FreeVector, g: &FreeVector) -> FreeVector {
        h.bilinear(g, |x, y| (self.sigma)(x, y))
    }

    pub fn apply_inv(&self, h: &FreeVector, g: &FreeVector) -> FreeVector {
        h.bilinear(g, |x, y| (self.sigma_inv)(x, y))
    }
}
