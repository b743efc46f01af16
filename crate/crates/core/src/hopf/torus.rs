//! The noncommutative torus vu = λuv graded over the Laurent Hopf algebra by
//! u ↦ u⊗t, v ↦ v⊗t⁻¹.

use std::sync::Arc;

use super::algebra::AlgebraPresentation;
use super::builders::{build_laurent_hopf, laurent_index};
use super::comodule::{CoinvariantFamily, ComoduleAlgebra};
use crate::linalg::{map1, Basis, BasisIndex, FreeVector};
use crate::scalars::RootOfUnity;

/// Basis monomial u^m v^n.
pub fn torus_index(m: i64, n: i64) -> BasisIndex {
    BasisIndex::new("uv", &[m, n])
}

#[derive(Clone)]
pub struct TorusComodule {
    pub lambda: RootOfUnity,
    pub comodule: ComoduleAlgebra,
}

impl TorusComodule {
    pub fn monomial(&self, m: i64, n: i64) -> FreeVector {
        FreeVector::basis(torus_index(m, n))
    }

    pub fn u(&self) -> FreeVector {
        self.monomial(1, 0)
    }

    pub fn v(&self) -> FreeVector {
        self.monomial(0, 1)
    }

    /// (uv)^k, including negative k.
    pub fn uv_pow(&self, k: i64) -> FreeVector {
        uv_power(self.lambda, k)
    }
}

/// (uv)^k = λ^(k(k−1)/2) u^k v^k; the formula holds for all integers k.
pub fn uv_power(lambda: RootOfUnity, k: i64) -> FreeVector {
    FreeVector::term(torus_index(k, k), lambda.pow(k * (k - 1) / 2))
}

pub fn torus_algebra(lambda: RootOfUnity) -> AlgebraPresentation {
    AlgebraPresentation::new(
        format!("A_θ (λ = z{}^{})", lambda.order, lambda.exponent),
        Basis::lattice(2, |p| torus_index(p[0], p[1])),
        // v^b u^c = λ^(bc) u^c v^b
        move |i, j| {
            let (a, b) = (i.int(0), i.int(1));
            let (c, d) = (j.int(0), j.int(1));
            FreeVector::term(torus_index(a + c, b + d), lambda.pow(b * c))
        },
        FreeVector::basis(torus_index(0, 0)),
    )
}

pub fn build_torus_comodule(lambda: RootOfUnity) -> TorusComodule {
    let algebra = torus_algebra(lambda);
    let coaction = map1(|i| FreeVector::basis(BasisIndex::pair(i, &laurent_index(i.int(0) - i.int(1)))));
    let coinvariants = CoinvariantFamily {
        description: "span{(uv)^k}".into(),
        enumerate: Arc::new(move |w| (-w..=w).map(|k| uv_power(lambda, k)).collect()),
        contains: Arc::new(|v: &FreeVector| v.indices().all(|i| i.tag() == "uv" && i.int(0) == i.int(1))),
    };
    TorusComodule {
        lambda,
        comodule: ComoduleAlgebra { algebra, hopf: build_laurent_hopf(), coaction, coinvariants: Some(coinvariants) },
    }
}
