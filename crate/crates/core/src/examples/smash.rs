//! Smash product k[w, w⁻¹] # k[t, t⁻¹] with t·w = λw: the commutative
//! calculus on the base, the q-calculus on the Hopf algebra, and the cleft
//! data of the product over its base (j(t) = 1 ⊗ t, an algebra map).

use std::sync::Arc;

use crate::crossed::{build_crossed_product, crossed_index, CleftData, Cocycle, Measure};
use crate::crossed_calc::{build_crossed_fodc, hor_index, CrossedCalcError, CrossedFodc, Pullback};
use crate::examples::torus::{base_index, torus_base};
use crate::fodc::{build_kahler_laurent, build_laurent_q_calculus};
use crate::hopf::{build_laurent_hopf, laurent_index};
use crate::linalg::{map1, FreeVector};
use crate::scalars::RootOfUnity;

#[derive(Clone)]
pub struct SmashDemo {
    pub lambda: RootOfUnity,
    pub q: RootOfUnity,
    pub calculus: CrossedFodc,
    pub cleft: CleftData,
    /// The base calculus with β ↦ β ⊗ 1.
    pub pullback: Pullback,
}

/// t^k · w^l = λ^{kl} w^l.
pub fn smash_measure(lambda: RootOfUnity) -> Measure {
    Measure::new(move |t, w| FreeVector::term(w.clone(), lambda.pow(t.int(0) * w.int(0))))
}

pub fn smash_demo(lambda: RootOfUnity, q: RootOfUnity, window: i64) -> Result<SmashDemo, CrossedCalcError> {
    let (base, hopf) = (torus_base(), build_laurent_hopf());
    let cp = build_crossed_product(&base, &hopf, &smash_measure(lambda), &Cocycle::trivial(&hopf, &base), window)?;
    let b_calc = build_kahler_laurent(&base);
    let calculus = build_crossed_fodc(&cp, &b_calc, &build_laurent_q_calculus(q)?, window)?;
    let unit_t = laurent_index(0);
    let cleft = CleftData {
        total: cp.comodule.clone(),
        base,
        inclusion: map1(move |w| FreeVector::basis(crossed_index(w, &laurent_index(0)))),
        retraction: Arc::new(move |v| {
            let mut out = FreeVector::zero();
            for (i, c) in v.iter() {
                let (w, t) = i.split2();
                if *t != unit_t {
                    return None;
                }
                out.add_term(w.clone(), c.clone());
            }
            Some(out)
        }),
        cleaving: map1(|t| FreeVector::basis(crossed_index(&base_index(0), t))),
        cleaving_inv: Some(map1(|t| FreeVector::basis(crossed_index(&base_index(0), &laurent_index(-t.int(0)))))),
    };
    let pullback = Pullback { calc: b_calc, embed: map1(|b| FreeVector::basis(hor_index(b, &laurent_index(0)))) };
    Ok(SmashDemo { lambda, q, calculus, cleft, pullback })
}
