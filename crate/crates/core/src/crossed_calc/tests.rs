use super::*;
use crate::crossed::{build_crossed_product, cleft_to_crossed, CleftCrossed, CleftData, Cocycle, Measure};
use crate::examples::smash::{smash_demo, SmashDemo};
use crate::examples::torus::{base_index, torus_base, torus_cleft};
use crate::fodc::{
    build_kahler_laurent, build_laurent_q_calculus, kahler_index, q_integer, qform_index, universal_d, universal_fodc,
    universal_quotient, woronowicz_from_ideal, zero_calculus, zero_hopf_calculus, IdealCalculusSpec,
};
use crate::hopf::{build_group_algebra, build_radford, cyclic_table, group_index, laurent_index, HopfData, Radford};
use crate::report::Status;
use crate::scalars::{CycScalar, RootOfUnity};
use std::sync::Arc;

pub(crate) fn radford() -> (Radford, CleftCrossed) {
    let r = build_radford(2, 2, RootOfUnity::primitive(4)).unwrap();
    let cc = cleft_to_crossed(&CleftData::with_subalgebra(r.comodule(), r.h1.clone(), r.cleaving()), 0).unwrap();
    (r, cc)
}

/// Universal calculus on H₁ with d(a²) = 0 imposed.
pub(crate) fn closed_square_calc(r: &Radford) -> Fodc {
    universal_quotient(&r.h1, &[universal_d(&r.h1, &r.a_pow(2))]).unwrap()
}

/// The calculus on k[C₂] from the zero ideal.
pub(crate) fn c2_calc(h: &HopfData) -> Fodc {
    woronowicz_from_ideal(&IdealCalculusSpec { hopf: h.clone(), ideal_gens: vec![] }).unwrap().fodc
}

pub(crate) fn c2() -> HopfData {
    build_group_algebra("C2", &cyclic_table(2)).unwrap()
}

pub(crate) fn radford_crossed() -> (Radford, CrossedFodc) {
    let (r, cc) = radford();
    let cf = build_crossed_fodc(&cc.crossed, &closed_square_calc(&r), &c2_calc(&r.group), 0).unwrap();
    (r, cf)
}

pub(crate) fn demo() -> SmashDemo {
    smash_demo(RootOfUnity::primitive(8), RootOfUnity::new(8, 2), 2).unwrap()
}

fn int(n: i64) -> CycScalar {
    CycScalar::from_int(n)
}

fn failures(r: &CheckReport) -> Vec<&crate::report::CheckEntry> {
    r.failures().collect()
}

#[test]
fn radford_crossed_calculus_verifies() {
    let (_, cf) = radford_crossed();
    let report = verify_crossed_fodc(&cf, 0);
    assert!(report.passed(), "{:?}", failures(&report));
    for name in ["leibniz", "witness-horizontal", "witness-vertical", "d-right-colinear", "rho-differentiable"] {
        assert_eq!(report.status(name), Some(Status::Pass), "{name}");
    }
}

#[test]
fn radford_differential_expands_to_eight_terms() {
    let (r, cf) = radford_crossed();
    let (b_calc, h_calc) = (&cf.b_calc, &cf.h_calc);
    let (alpha, beta, gamma, delta, e, f) = (int(2), int(3), int(5), int(7), int(11), int(13));
    let a2 = r.a_pow(2);
    let a2x = r.monomial(2, 1);
    let chi = r.h1.one().scale(&alpha).add(&r.x().scale(&beta)).add(&a2.scale(&gamma)).add(&a2x.scale(&delta));
    let (one, abar) = (FreeVector::basis(group_index(0)), FreeVector::basis(group_index(1)));
    let h = one.scale(&e).add(&abar.scale(&f));

    let dx = b_calc.diff(&r.x());
    let a2dx = b_calc.left_act(&a2, &dx);
    let dabar = h_calc.diff(&abar);
    // d ā = [ā] ⊗ ā, a single form
    assert_eq!(dabar.len(), 1);
    assert_eq!(dabar.indices().next().unwrap().idx(1), &group_index(1));
    let expected = [
        hor(&dx.scale(&beta.mul(&e)), &one),
        hor(&dx.scale(&beta.mul(&f)), &abar),
        hor(&a2dx.scale(&delta.mul(&e)), &one),
        hor(&a2dx.scale(&delta.mul(&f)), &abar),
        ver(&r.h1.one().scale(&alpha.mul(&f)), &dabar),
        ver(&r.x().scale(&beta.mul(&f)), &dabar),
        ver(&a2.scale(&gamma.mul(&f)), &dabar),
        ver(&a2x.scale(&delta.mul(&f)), &dabar),
    ]
    .iter()
    .fold(FreeVector::zero(), |acc, t| acc.add(t));
    assert_eq!(cf.fodc.diff(&chi.tensor(&h)), expected);
}

#[test]
fn smash_actions_reduce_to_smash_formulas() {
    let d = demo();
    let (lambda, q, f) = (d.lambda, d.q, &d.calculus.fodc);
    let el = |l: i64, k: i64| crossed_index(&base_index(l), &laurent_index(k));
    let hw = |m: i64, n: i64| hor_index(&kahler_index(m), &laurent_index(n));
    let vt = |m: i64, n: i64| ver_index(&base_index(m), &qform_index(n));
    let term = |i: BasisIndex, c: CycScalar| FreeVector::term(i, c);
    for (l, k, m, n) in (-1..=1)
        .flat_map(|l| (-1..=1).flat_map(move |k| (-1..=1).flat_map(move |m| (-1..=1).map(move |n| (l, k, m, n)))))
    {
        // t^k·(w^m dw) = λ^{k(m+1)} w^m dw and t^k·w^m = λ^{km} w^m
        assert_eq!((f.left)(&el(l, k), &hw(m, n)), term(hw(l + m, k + n), lambda.pow(k * (m + 1))));
        assert_eq!((f.left)(&el(l, k), &vt(m, n)), term(vt(l + m, k + n), lambda.pow(k * m)));
        assert_eq!((f.right)(&hw(m, n), &el(l, k)), term(hw(m + l, n + k), lambda.pow(n * l)));
        // λ(t^n dt) = t^{n+1} ⊗ t^n dt and t^n dt·t^k = q^k t^{n+k} dt
        let coeff = lambda.pow((n + 1) * l).mul(&q.pow(k));
        assert_eq!((f.right)(&vt(m, n), &el(l, k)), term(vt(m + l, n + k), coeff));
    }
    for (l, k) in [(3, 2), (-2, 1), (0, -3)] {
        let expected = term(hw(l - 1, k), int(l)).add(&term(vt(l, k - 1), q_integer(q, k)));
        assert_eq!((f.d)(&el(l, k)), expected);
    }
}

#[test]
fn smash_calculus_verifies_on_window() {
    let d = demo();
    let report = verify_crossed_fodc(&d.calculus, 2);
    assert!(report.passed(), "{:?}", failures(&report));
    assert_eq!(report.status("leibniz"), Some(Status::WindowVerified));
}

#[test]
fn right_coaction_splits_the_hopf_factor() {
    let d = demo();
    let rc = d.calculus.fodc.right_coaction.as_ref().unwrap();
    let beta = hor_index(&kahler_index(2), &laurent_index(3));
    let expected = FreeVector::basis(BasisIndex::pair(&beta, &laurent_index(3)));
    assert_eq!((rc.forms)(&beta), expected);
}

#[test]
fn torus_kahler_calculus_is_refused_and_witnessed() {
    let (_, data) = torus_cleft(RootOfUnity::primitive(8));
    let cc = cleft_to_crossed(&data, 2).unwrap();
    let kahler = build_kahler_laurent(&torus_base());
    let qcalc = build_laurent_q_calculus(RootOfUnity::new(8, 2)).unwrap();
    match build_crossed_fodc(&cc.crossed, &kahler, &qcalc, 2) {
        Err(CrossedCalcError::Hypothesis { check, .. }) => assert_eq!(check, "dsigma"),
        other => panic!("expected a dsigma failure, got {:?}", other.map(|c| c.fodc.name)),
    }
    let report = necessity_dsigma(&cc.crossed, &kahler, &qcalc, 2).unwrap();
    assert_eq!(report.status("dsigma-identity"), Some(Status::WindowVerified));
    let entry = report.get("dsigma").unwrap();
    assert!(entry.status.is_fail());
    let at = format!("at ({}, {})", laurent_index(1), laurent_index(-1));
    assert!(entry.witness.as_deref().unwrap().starts_with(&at), "{:?}", entry.witness);
}

#[test]
fn radford_universal_calculus_witnessed_at_abar() {
    let (r, cc) = radford();
    let report = necessity_dsigma(&cc.crossed, &universal_fodc(&r.h1).unwrap(), &c2_calc(&r.group), 0).unwrap();
    assert_eq!(report.status("dsigma-identity"), Some(Status::Pass));
    let entry = report.get("dsigma").unwrap();
    assert!(entry.status.is_fail());
    let abar = group_index(1);
    assert!(entry.witness.as_deref().unwrap().starts_with(&format!("at ({abar}, {abar})")));
}

#[test]
fn trivial_cocycle_leaves_no_witness() {
    let d = demo();
    let cf = &d.calculus;
    let report = necessity_dsigma(&cf.crossed, &cf.b_calc, &cf.h_calc, 2).unwrap();
    assert!(report.passed(), "{:?}", failures(&report));
}

#[test]
fn truncation_of_q_calculus_and_zero_calculus() {
    let qcalc = build_laurent_q_calculus(RootOfUnity::new(8, 2)).unwrap();
    let (dc, report) = truncate_dc_degree2(&qcalc, 2).unwrap();
    assert_eq!(report.status("cross-terms"), Some(Status::WindowVerified));
    assert_eq!(dc.max_degree(), 2);
    assert!(truncate_dc_degree2(&zero_hopf_calculus(&c2()), 0).is_ok());
    assert!(truncate_dc_degree2(&zero_calculus(&c2().algebra), 0).is_err());
}

#[test]
fn truncation_of_c2_calculus_has_no_two_forms() {
    let calc = c2_calc(&c2());
    let (dc, report) = truncate_dc_degree2(&calc, 0).unwrap();
    assert_eq!(report.status("cross-terms"), Some(Status::Pass));
    assert!(dc.elements(2, 0).is_empty());
}

fn demo_higher() -> (SmashDemo, HigherForms) {
    let d = demo();
    let cf = &d.calculus;
    let tc = crate::fodc::check_sigma_twisted_module_calculus(
        &cf.b_calc,
        &cf.crossed.hopf,
        &cf.crossed.measure,
        &cf.crossed.cocycle,
        2,
    )
    .unwrap();
    let b_dc = twisted_dc(&cf.b_calc, &cf.crossed.measure, &tc);
    let (h_dc, _) = truncate_dc_degree2(&cf.h_calc, 2).unwrap();
    let hf = build_higher_forms(&cf.crossed, &b_dc, &h_dc, 2).unwrap();
    (d, hf)
}

#[test]
fn higher_forms_on_smash_demo_are_a_dga() {
    let (d, hf) = demo_higher();
    assert!(hf.hypotheses.passed(), "{:?}", failures(&hf.hypotheses));
    assert_eq!(hf.dc.max_degree(), 4);
    let report = check_graded_dc(&hf.dc, 1);
    assert!(report.passed(), "{:?}", failures(&report));
    let cmp = compare_with_first_order(&hf.dc, &d.calculus, 2);
    assert!(cmp.passed(), "{:?}", failures(&cmp));
}

#[test]
fn vertical_times_horizontal_carries_the_sign() {
    let (d, hf) = demo_higher();
    let dt = ver_index(&base_index(0), &qform_index(0));
    let dw = hor_index(&kahler_index(0), &laurent_index(0));
    let two_form = FreeVector::basis(hf_index(1, 1, &kahler_index(0), &qform_index(0)));
    assert_eq!((hf.dc.wedge)(1, &dw, 1, &dt), two_form);
    // (−1)^{1·1} (t·dw) ⊗ dt with t·dw = λ dw
    assert_eq!((hf.dc.wedge)(1, &dt, 1, &dw), two_form.scale(&d.lambda.value().neg()));
}

#[test]
fn d_squared_vanishes_in_degree_one() {
    let (_, hf) = demo_higher();
    for w in hf.dc.elements(1, 2) {
        let dd = hf.dc.diff(2, &(hf.dc.d)(1, &w));
        assert!(dd.is_zero(), "d²({w}) = {dd}");
    }
}

#[test]
fn torus_with_zero_base_calculus_has_only_vertical_forms() {
    let (_, data) = torus_cleft(RootOfUnity::primitive(8));
    let cc = cleft_to_crossed(&data, 2).unwrap();
    let zero = zero_calculus(&torus_base());
    let tc = crate::fodc::check_sigma_twisted_module_calculus(
        &zero,
        &cc.crossed.hopf,
        &cc.crossed.measure,
        &cc.crossed.cocycle,
        2,
    )
    .unwrap();
    let b_dc = twisted_dc(&zero, &cc.crossed.measure, &tc);
    let qcalc = build_laurent_q_calculus(RootOfUnity::new(8, 2)).unwrap();
    let (h_dc, _) = truncate_dc_degree2(&qcalc, 2).unwrap();
    let hf = build_higher_forms(&cc.crossed, &b_dc, &h_dc, 2).unwrap();
    let ones = hf.dc.elements(1, 2);
    assert_eq!(ones.len(), 25);
    assert!(ones.iter().all(|w| w.tag() == "ver"));
    assert!(hf.dc.elements(2, 2).is_empty());
    let report = check_graded_dc(&hf.dc, 2);
    assert!(report.passed(), "{:?}", failures(&report));
}

#[test]
fn missing_graded_action_is_named() {
    let d = demo();
    let cf = &d.calculus;
    let b_dc = first_order_dc(&cf.b_calc);
    let (h_dc, _) = truncate_dc_degree2(&cf.h_calc, 1).unwrap();
    match build_higher_forms(&cf.crossed, &b_dc, &h_dc, 1) {
        Err(CrossedCalcError::Hypothesis { check, .. }) => assert_eq!(check, "graded-action"),
        _ => panic!("expected the missing action to be reported"),
    }
}

#[test]
fn c2_cohomology_in_degree_zero() {
    // d(e1̄ + fā) = f dā, so the kernel of d is spanned by 1̄.
    let dc = first_order_dc(&c2_calc(&c2()));
    let h = de_rham_cohomology(&dc, 1, 0);
    assert_eq!(h[0].dimension, 1);
    assert_eq!(h[1].image, 1);
    assert_eq!(h[0].window, None);
}

#[test]
fn zero_calculus_cohomology_is_the_algebra() {
    let (r, _) = radford();
    let h = de_rham_cohomology(&first_order_dc(&zero_calculus(&r.h1)), 0, 0);
    assert_eq!(h[0].dimension, 4);
}

#[test]
fn radford_crossed_cohomology_in_degree_zero() {
    // ker d = (ker d_B) ⊗ (ker d_H) = span{1, a²} ⊗ 1̄
    let (_, cf) = radford_crossed();
    let h = de_rham_cohomology(&first_order_dc(&cf.fodc), 1, 0);
    assert_eq!(h[0].dimension, 2);
    assert_eq!(h[1].image, 6);
}

#[test]
fn smash_demo_classifies() {
    let d = demo();
    let c = classify_smash(&d.calculus.fodc, &d.calculus.h_calc, &d.cleft, Some(d.pullback.clone()), 1, 7).unwrap();
    assert!(c.report.passed(), "{:?}", failures(&c.report));
    assert_eq!(c.report.status("torsion-free"), Some(Status::Sampled));
    assert!(c.theta_hat_inv.is_some());
    for name in
        ["classification-(1)", "classification-(2)", "classification-(3)", "theta-hat-d", "theta-hat-surjective"]
    {
        assert_eq!(c.report.status(name), Some(Status::WindowVerified), "{name}");
    }
}

#[test]
fn torus_is_not_a_trivial_extension() {
    let (_, data) = torus_cleft(RootOfUnity::primitive(8));
    let qcalc = build_laurent_q_calculus(RootOfUnity::new(8, 2)).unwrap();
    // any calculus on A will do; refusal happens first
    let a_calc = zero_calculus(&data.total.algebra);
    let err = classify_smash(&a_calc, &qcalc, &data, None, 1, 0).err().unwrap();
    assert!(matches!(err, CrossedCalcError::NotTrivialExtension(_)));
    assert!(err.to_string().starts_with("not a trivial extension"));
}

#[test]
fn tensor_calculus_on_commutative_base_passes_condition_three() {
    let h = c2();
    let base = h.algebra.clone();
    let cp = build_crossed_product(&base, &h, &Measure::trivial(&h), &Cocycle::trivial(&h, &base), 0).unwrap();
    let calc = c2_calc(&h);
    let cf = build_crossed_fodc(&cp, &calc, &calc, 0).unwrap();
    let unit = group_index(0);
    let cleft = CleftData {
        total: cp.comodule.clone(),
        base,
        inclusion: crate::linalg::map1(move |b| FreeVector::basis(crossed_index(b, &group_index(0)))),
        retraction: Arc::new(move |v| {
            v.iter()
                .map(|(i, c)| {
                    let (b, g) = i.split2();
                    (*g == unit).then(|| (b.clone(), c.clone()))
                })
                .collect::<Option<Vec<_>>>()
                .map(FreeVector::from_terms)
        }),
        cleaving: crate::linalg::map1(|g| FreeVector::basis(crossed_index(&group_index(0), g))),
        cleaving_inv: None,
    };
    let c = classify_smash(&cf.fodc, &calc, &cleft, None, 0, 3).unwrap();
    assert_eq!(c.report.status("classification-(3)"), Some(Status::Pass));
    assert!(c.report.passed(), "{:?}", failures(&c.report));
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(6))]

        #[test]
        fn smash_instances_verify(l in 0i64..8, k in prop::sample::select(vec![1i64, 2, 3, 5, 6, 7])) {
            let d = smash_demo(RootOfUnity::new(8, l), RootOfUnity::new(8, k), 1).unwrap();
            let report = verify_crossed_fodc(&d.calculus, 1);
            prop_assert!(report.passed(), "{:?}", failures(&report));
            let c = classify_smash(&d.calculus.fodc, &d.calculus.h_calc, &d.cleft, Some(d.pullback.clone()), 1, l as u64).unwrap();
            prop_assert_eq!(c.report.status("theta-hat-d"), Some(Status::WindowVerified));
        }
    }
}
