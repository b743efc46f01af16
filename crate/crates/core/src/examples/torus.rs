//! Noncommutative torus: cleft data over the Laurent Hopf algebra, and the
//! calculi used on it.

use std::sync::Arc;

use crate::crossed::CleftData;
use crate::hopf::{build_torus_comodule, laurent_ring, torus_index, uv_power, AlgebraPresentation, TorusComodule};
use crate::linalg::{map1, BasisIndex, FreeVector};
use crate::scalars::RootOfUnity;

pub fn base_index(l: i64) -> BasisIndex {
    BasisIndex::new("w", &[l])
}

/// B = k[w, w⁻¹], with w^l standing for (uv)^l.
pub fn torus_base() -> AlgebraPresentation {
    laurent_ring("B", "w")
}

pub fn torus_cleft(lambda: RootOfUnity) -> (TorusComodule, CleftData) {
    let torus = build_torus_comodule(lambda);
    // j(t^k) = u^k, j(t^-k) = v^k; j⁻¹(t^k) = u^-k, j⁻¹(t^-k) = v^-k (k ≥ 0)
    let cleaving = map1(|t| {
        let k = t.int(0);
        FreeVector::basis(if k >= 0 { torus_index(k, 0) } else { torus_index(0, -k) })
    });
    let cleaving_inv = map1(|t| {
        let k = t.int(0);
        FreeVector::basis(if k >= 0 { torus_index(-k, 0) } else { torus_index(0, k) })
    });
    let data = CleftData {
        total: torus.comodule.clone(),
        base: torus_base(),
        inclusion: map1(move |w| uv_power(lambda, w.int(0))),
        retraction: Arc::new(move |v| {
            let mut out = FreeVector::zero();
            for (i, c) in v.iter() {
                let (m, n) = (i.int(0), i.int(1));
                if i.tag() != "uv" || m != n {
                    return None;
                }
                // u^m v^m = λ^(−m(m−1)/2) (uv)^m
                out.add_term(base_index(m), c.mul(&lambda.pow(-(m * (m - 1) / 2))));
            }
            Some(out)
        }),
        cleaving,
        cleaving_inv: Some(cleaving_inv),
    };
    (torus, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::cleft_to_crossed;
    use crate::hopf::laurent_index;

    #[test]
    fn derived_structure_matches_closed_forms() {
        let lambda = RootOfUnity::primitive(8);
        let (torus, data) = torus_cleft(lambda);
        let cc = cleft_to_crossed(&data, 3).unwrap();
        assert!(cc.report.passed(), "{:?}", cc.report.failures().collect::<Vec<_>>());
        let w = |l: i64| FreeVector::basis(base_index(l));
        let t = laurent_index;
        let as_base = |v: FreeVector| (data.retraction)(&v).unwrap();
        for k in -3..=3 {
            for l in -3..=3 {
                assert_eq!((cc.crossed.measure.act)(&t(k), &base_index(l)), w(l).scale(&lambda.pow(-k * l)));
            }
        }
        for k in 0..=3 {
            for s in 0..=3 {
                let sigma = |a: i64, b: i64| (cc.crossed.cocycle.sigma)(&t(a), &t(b));
                assert_eq!(sigma(k, s), w(0));
                assert_eq!(sigma(-k, -s), w(0));
                let mixed =
                    if s <= k { torus.monomial(s, s).scale(&lambda.pow(-s * (k - s))) } else { torus.monomial(k, k) };
                assert_eq!(sigma(k, -s), as_base(mixed), "σ(t^{k}⊗t^-{s})");
                let mixed = if k <= s {
                    torus.monomial(k, k).scale(&lambda.pow(k * k))
                } else {
                    torus.monomial(s, s).scale(&lambda.pow(s * k))
                };
                assert_eq!(sigma(-k, s), as_base(mixed), "σ(t^-{k}⊗t^{s})");
            }
        }
    }
}
