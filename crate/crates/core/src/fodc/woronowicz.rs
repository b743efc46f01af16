use std::sync::Arc;

use super::{solve_presentations, Fodc, FodcError, FormCoaction};
use crate::hopf::HopfData;
use crate::linalg::{map1, map2, Basis, BasisIndex, FreeVector, Subquotient, Subspace};

/// Generators of a left ideal I ⊆ H⁺.
#[derive(Clone)]
pub struct IdealCalculusSpec {
    pub hopf: HopfData,
    pub ideal_gens: Vec<FreeVector>,
}

/// The calculus (H⁺/I) ⊗ H with d h = [h₁ − ε(h₁)1] ⊗ h₂.
#[derive(Clone)]
pub struct Woronowicz {
    pub fodc: Fodc,
    pub ideal: Subspace,
    /// H modulo I + k·1, which is H⁺/I.
    pub quotient: Arc<Subquotient>,
    /// Whether Ad_L(I) ⊆ H ⊗ I, i.e. whether the left coaction is attached.
    pub bicovariant: bool,
}

/// Form [g] ⊗ h, with `class` a label of H⁺/I.
pub fn wor_index(class: &BasisIndex, h: &BasisIndex) -> BasisIndex {
    BasisIndex::wrap("wor", &[class.clone(), h.clone()])
}

/// Smallest left ideal containing the generators.
pub fn left_ideal_closure(h: &HopfData, gens: &[FreeVector]) -> Subspace {
    let els = h.algebra.basis.elements();
    let mut ideal = Subspace::spanned_by(gens);
    let mut frontier: Vec<FreeVector> = ideal.basis().cloned().collect();
    while let Some(v) = frontier.pop() {
        for x in &els {
            let w = h.algebra.mul(&FreeVector::basis(x.clone()), &v);
            if ideal.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    ideal
}

pub fn woronowicz_from_ideal(spec: &IdealCalculusSpec) -> Result<Woronowicz, FodcError> {
    let h = spec.hopf.clone();
    if !h.is_finite() {
        return Err(FodcError::NotFinite("the ideal construction"));
    }
    for g in &spec.ideal_gens {
        if !h.eps(g).is_zero() {
            return Err(FodcError::NotInAugmentation(g.to_string()));
        }
    }
    let ideal = left_ideal_closure(&h, &spec.ideal_gens);
    let mut denominator = ideal.clone();
    denominator.insert(h.one());
    let els = h.algebra.basis.elements();
    let numerator: Vec<FreeVector> = els.iter().map(|i| FreeVector::basis(i.clone())).collect();
    let quotient = Arc::new(Subquotient::new(&numerator, denominator));
    let classes = quotient.labels();

    // π(v) = class of v modulo I + k·1.
    let pi = {
        let q = quotient.clone();
        move |v: &FreeVector| q.coords(v).expect("every element has a class")
    };
    let forms: Vec<BasisIndex> = classes.iter().flat_map(|c| els.iter().map(move |x| wor_index(c, x))).collect();

    let d = {
        let (h, pi) = (h.clone(), pi.clone());
        map1(move |x| {
            let mut out = FreeVector::zero();
            for (t, c) in h.delta_idx(x).iter() {
                let (x1, x2) = t.split2();
                let cls = pi(&FreeVector::basis(x1.clone()));
                out.add_scaled(&cls.map_linear(|k| FreeVector::basis(wor_index(k, x2))), c);
            }
            out
        })
    };
    let left = {
        let (h, pi, q) = (h.clone(), pi.clone(), quotient.clone());
        map2(move |a, w| {
            // Representative moved into H⁺ so that the action is by left multiplication.
            let lifted = q.lift(w.idx(0));
            let g = lifted.sub(&h.one().scale(&h.eps(&lifted)));
            let x = w.idx(1);
            let mut out = FreeVector::zero();
            for (t, c) in h.delta_idx(a).iter() {
                let (a1, a2) = t.split2();
                let cls = pi(&h.mul(&FreeVector::basis(a1.clone()), &g));
                let tail = h.algebra.mul_idx(a2, x);
                out.add_scaled(&cls.bilinear(&tail, |k, y| FreeVector::basis(wor_index(k, y))), c);
            }
            out
        })
    };
    let right = {
        let h = h.clone();
        map2(move |w, a| {
            let (k, x) = (w.idx(0).clone(), w.idx(1));
            h.algebra.mul_idx(x, a).map_linear(|y| FreeVector::basis(wor_index(&k, y)))
        })
    };
    let right_coaction = {
        let h2 = h.clone();
        FormCoaction {
            hopf: h.clone(),
            algebra: h.comul.clone(),
            forms: map1(move |w| {
                let (k, x) = (w.idx(0).clone(), w.idx(1));
                h2.delta_idx(x).map_terms(|t| FreeVector::basis(BasisIndex::pair(&wor_index(&k, t[0]), t[1])))
            }),
        }
    };

    // Ad_L(v) = v₁S(v₃) ⊗ v₂ must land in H ⊗ I, i.e. vanish after π.
    let ad_l = |v: &FreeVector| {
        h.delta2(v).map_terms(|t| {
            let left = h.mul(&FreeVector::basis(t[0].clone()), &h.s(&FreeVector::basis(t[2].clone())));
            left.tensor(&FreeVector::basis(t[1].clone()))
        })
    };
    let bicovariant = ideal.basis().all(|v| ad_l(v).map_factor(1, 1, |y| pi(&FreeVector::basis(y.clone()))).is_zero());
    let left_coaction = bicovariant.then(|| {
        let (h2, pi, q) = (h.clone(), pi.clone(), quotient.clone());
        FormCoaction {
            hopf: h.clone(),
            algebra: h.comul.clone(),
            // λ([g] ⊗ x) = g₁S(g₃)x₁ ⊗ [g₂] ⊗ x₂
            forms: map1(move |w| {
                let (g, x) = (q.lift(w.idx(0)), w.idx(1));
                let dx = h2.delta_idx(x);
                let mut out = FreeVector::zero();
                for (t, c) in h2.delta2(&g).iter() {
                    let (g1, g2, g3) = t.split3();
                    let head = h2.mul(&FreeVector::basis(g1.clone()), &h2.s(&FreeVector::basis(g3.clone())));
                    let cls = pi(&FreeVector::basis(g2.clone()));
                    for (u, e) in dx.iter() {
                        let (x1, x2) = u.split2();
                        let left = h2.mul(&head, &FreeVector::basis(x1.clone()));
                        let form = cls.map_linear(|k| FreeVector::basis(wor_index(k, x2)));
                        out.add_scaled(&left.tensor(&form), &c.mul(e));
                    }
                }
                out
            }),
        }
    });
    let table = solve_presentations(&h.algebra, &forms, &left, &d)?;
    let fodc = Fodc {
        name: format!("calculus on {} from an ideal of dimension {}", h.name(), ideal.dim()),
        algebra: h.algebra.clone(),
        forms: Basis::finite(forms),
        left,
        right,
        d,
        right_coaction: Some(right_coaction),
        left_coaction,
        presentation: map1(move |w| table[w].clone()),
    };
    Ok(Woronowicz { fodc, ideal, quotient, bicovariant })
}
