use super::{Fodc, FodcError, FormCoaction};
use crate::hopf::{build_laurent_hopf, laurent_index, AlgebraPresentation};
use crate::linalg::{map1, map2, Basis, BasisIndex, FreeVector};
use crate::scalars::{CycScalar, RootOfUnity};

/// The form t^n dt.
pub fn qform_index(n: i64) -> BasisIndex {
    BasisIndex::new("tdt", &[n])
}

/// The form w^l dw of the commutative calculus on k[w, w⁻¹].
pub fn kahler_index(l: i64) -> BasisIndex {
    BasisIndex::new("wdw", &[l])
}

/// [m]_q = (q^m − 1)/(q − 1), for every integer m.
pub fn q_integer(q: RootOfUnity, m: i64) -> CycScalar {
    let num = q.pow(m).sub(&CycScalar::one());
    let den = q.value().sub(&CycScalar::one());
    num.div(&den).expect("q ≠ 1")
}

/// The bicovariant calculus on k[t, t⁻¹] with dt·t = q t dt and
/// d f = (f(qt) − f(t)) / (t(q − 1)) dt.
pub fn build_laurent_q_calculus(q: RootOfUnity) -> Result<Fodc, FodcError> {
    if q.multiplicative_order() < 3 {
        return Err(FodcError::Parameter(format!("q = z{}^{} must have order at least 3", q.order, q.exponent)));
    }
    let h = build_laurent_hopf();
    let right_forms = map1(|w| FreeVector::basis(BasisIndex::pair(w, &laurent_index(w.int(0) + 1))));
    let left_forms = map1(|w| FreeVector::basis(BasisIndex::pair(&laurent_index(w.int(0) + 1), w)));
    Ok(Fodc {
        name: format!("q-calculus on k[t,t^-1], q = z{}^{}", q.order, q.exponent),
        algebra: h.algebra.clone(),
        forms: Basis::lattice(1, |p| qform_index(p[0])),
        left: map2(|a, w| FreeVector::basis(qform_index(a.int(0) + w.int(0)))),
        right: map2(move |w, a| FreeVector::term(qform_index(w.int(0) + a.int(0)), q.pow(a.int(0)))),
        d: map1(move |a| {
            let m = a.int(0);
            FreeVector::term(qform_index(m - 1), q_integer(q, m))
        }),
        right_coaction: Some(FormCoaction { hopf: h.clone(), algebra: h.comul.clone(), forms: right_forms }),
        left_coaction: Some(FormCoaction { hopf: h.clone(), algebra: h.comul.clone(), forms: left_forms }),
        presentation: map1(|w| FreeVector::basis(BasisIndex::pair(&laurent_index(w.int(0)), &laurent_index(1)))),
    })
}

/// The commutative calculus on k[w, w⁻¹] (tag "w"): d w^l = l w^(l−1) dw.
pub fn build_kahler_laurent(algebra: &AlgebraPresentation) -> Fodc {
    let tag = algebra.one().indices().next().expect("unit").tag();
    let act = |a: &BasisIndex, w: &BasisIndex| FreeVector::basis(kahler_index(a.int(0) + w.int(0)));
    Fodc {
        name: format!("commutative calculus on {}", algebra.name),
        algebra: algebra.clone(),
        forms: Basis::lattice(1, |p| kahler_index(p[0])),
        left: map2(act),
        right: map2(move |w, a| act(a, w)),
        d: map1(|a| {
            let l = a.int(0);
            FreeVector::term(kahler_index(l - 1), CycScalar::from_int(l))
        }),
        right_coaction: None,
        left_coaction: None,
        presentation: map1(move |w| {
            FreeVector::basis(BasisIndex::pair(&BasisIndex::new(tag, &[w.int(0)]), &BasisIndex::new(tag, &[1])))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fodc::check_fodc;
    use crate::hopf::laurent_ring;

    fn q() -> RootOfUnity {
        RootOfUnity::primitive(8)
    }

    #[test]
    fn differential_examples() {
        let f = build_laurent_q_calculus(q()).unwrap();
        let t2 = FreeVector::basis(laurent_index(2));
        let expect = FreeVector::term(qform_index(1), CycScalar::one().add(&q().value()));
        assert_eq!(f.diff(&t2), expect);
        assert!(f.diff(&FreeVector::basis(laurent_index(0))).is_zero());
        let rc = f.right_coaction.as_ref().unwrap();
        assert_eq!(
            (rc.forms)(&qform_index(3)),
            FreeVector::basis(BasisIndex::pair(&qform_index(3), &laurent_index(4)))
        );
    }

    #[test]
    fn difference_quotient_oracle() {
        // (f(qt) − f(t)) / (t(q − 1)) at f = t^m is q-integer times t^(m−1).
        let f = build_laurent_q_calculus(q()).unwrap();
        for m in -5..=5 {
            let coeff = q().pow(m).sub(&CycScalar::one()).div(&q().value().sub(&CycScalar::one())).unwrap();
            assert_eq!((f.d)(&laurent_index(m)), FreeVector::term(qform_index(m - 1), coeff));
        }
    }

    #[test]
    fn q_calculus_checks_on_window() {
        let f = build_laurent_q_calculus(q()).unwrap();
        let report = check_fodc(&f, 3);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn trivial_q_is_rejected() {
        assert!(build_laurent_q_calculus(RootOfUnity::new(2, 1)).is_err());
        assert!(build_laurent_q_calculus(RootOfUnity::new(8, 0)).is_err());
    }

    #[test]
    fn kahler_calculus_checks() {
        let f = build_kahler_laurent(&laurent_ring("B", "w"));
        assert!(check_fodc(&f, 3).passed());
    }
}
