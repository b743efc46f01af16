use std::sync::Arc;

use super::{solve_presentations, Fodc, FodcError, FormCoaction};
use crate::hopf::{AlgebraPresentation, HopfData};
use crate::linalg::{map1, map2, Basis, BasisIndex, FreeVector, LinearSystem, Subquotient, Subspace};

/// Ω¹ = 0, d = 0.
pub fn zero_calculus(algebra: &AlgebraPresentation) -> Fodc {
    Fodc {
        name: format!("zero calculus on {}", algebra.name),
        algebra: algebra.clone(),
        forms: Basis::empty(),
        left: map2(|_, _| FreeVector::zero()),
        right: map2(|_, _| FreeVector::zero()),
        d: map1(|_| FreeVector::zero()),
        right_coaction: None,
        left_coaction: None,
        presentation: map1(|w| panic!("the zero calculus has no form {w}")),
    }
}

/// The zero calculus on a Hopf algebra, bicovariant through Δ.
pub fn zero_hopf_calculus(h: &HopfData) -> Fodc {
    let coaction = FormCoaction { hopf: h.clone(), algebra: h.comul.clone(), forms: map1(|_| FreeVector::zero()) };
    Fodc { right_coaction: Some(coaction.clone()), left_coaction: Some(coaction), ..zero_calculus(&h.algebra) }
}

/// The universal calculus ker(m) ⊆ A⊗A with d a = 1⊗a − a⊗1.
pub fn universal_fodc(algebra: &AlgebraPresentation) -> Result<Fodc, FodcError> {
    universal_quotient(algebra, &[])
}

/// d_u a = 1⊗a − a⊗1 in A⊗A.
pub fn universal_d(algebra: &AlgebraPresentation, a: &FreeVector) -> FreeVector {
    algebra.one().tensor(a).sub(&a.tensor(&algebra.one()))
}

/// The universal calculus modulo the sub-bimodule generated by `relations`
/// (elements of ker m ⊆ A⊗A). Forms are labelled by normal-form pivots.
pub fn universal_quotient(algebra: &AlgebraPresentation, relations: &[FreeVector]) -> Result<Fodc, FodcError> {
    if !algebra.is_finite() {
        return Err(FodcError::NotFinite("the universal calculus"));
    }
    let els = algebra.basis.elements();
    let aa: Vec<BasisIndex> = els.iter().flat_map(|a| els.iter().map(move |b| BasisIndex::pair(a, b))).collect();
    let alg = algebra.clone();
    let mult = move |p: &BasisIndex| {
        let (a, b) = p.split2();
        alg.mul_idx(a, b)
    };
    let kernel = LinearSystem::from_images(&aa, mult).kernel();
    let mut sub = Subspace::new();
    for r in relations {
        if !kernel.contains(r) {
            return Err(FodcError::NotUniversalForm(r.to_string()));
        }
        for x in &els {
            for y in &els {
                let v = r.map_terms(|t| algebra.mul_idx(x, t[0]).tensor(&algebra.mul_idx(t[1], y)));
                sub.insert(v);
            }
        }
    }
    let quotient = Arc::new(Subquotient::new(kernel.basis(), sub));
    let labels = quotient.labels();
    let to_forms = {
        let q = quotient.clone();
        move |v: &FreeVector| {
            q.coords(v)
                .expect("element of ker m")
                .map_linear(|l| FreeVector::basis(BasisIndex::wrap("du", std::slice::from_ref(l))))
        }
    };
    let lift = {
        let q = quotient.clone();
        move |w: &BasisIndex| q.lift(w.idx(0))
    };
    let (a1, t1, l1) = (algebra.clone(), to_forms.clone(), lift.clone());
    let left = map2(move |a, w| {
        let v = l1(w).map_terms(|t| a1.mul_idx(a, t[0]).tensor(&FreeVector::basis(t[1].clone())));
        t1(&v)
    });
    let (a2, t2, l2) = (algebra.clone(), to_forms.clone(), lift.clone());
    let right = map2(move |w, a| {
        let v = l2(w).map_terms(|t| FreeVector::basis(t[0].clone()).tensor(&a2.mul_idx(t[1], a)));
        t2(&v)
    });
    let (a3, t3) = (algebra.clone(), to_forms.clone());
    let d = map1(move |a| t3(&universal_d(&a3, &FreeVector::basis(a.clone()))));
    let form_labels: Vec<BasisIndex> = labels.iter().map(|l| BasisIndex::wrap("du", std::slice::from_ref(l))).collect();
    let table = solve_presentations(algebra, &form_labels, &left, &d)?;
    Ok(Fodc {
        name: if relations.is_empty() {
            format!("universal calculus on {}", algebra.name)
        } else {
            format!("universal calculus on {} modulo {} relation(s)", algebra.name, relations.len())
        },
        algebra: algebra.clone(),
        forms: Basis::finite(form_labels),
        left,
        right,
        d,
        right_coaction: None,
        left_coaction: None,
        presentation: map1(move |w| table[w].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fodc::check_fodc;
    use crate::hopf::{build_group_algebra, cyclic_table};

    #[test]
    fn universal_on_c2() {
        let h = build_group_algebra("C2", &cyclic_table(2)).unwrap();
        let u = universal_fodc(&h.algebra).unwrap();
        assert_eq!(u.forms.elements().len(), 2);
        assert!(u.diff(&h.one()).is_zero());
        let report = check_fodc(&u, 0);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn universal_on_ground_field_is_zero() {
        let k = build_group_algebra("C1", &cyclic_table(1)).unwrap();
        assert_eq!(universal_fodc(&k.algebra).unwrap().forms.elements().len(), 0);
    }

    #[test]
    fn zero_calculus_passes() {
        let h = build_group_algebra("C3", &cyclic_table(3)).unwrap();
        assert!(check_fodc(&zero_calculus(&h.algebra), 0).passed());
    }
}
