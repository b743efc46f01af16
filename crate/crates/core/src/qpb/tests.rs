use super::*;
use crate::crossed::{cleft_to_crossed, CleftData};
use crate::crossed_calc::tests::{c2_calc, demo, radford, radford_crossed};
use crate::crossed_calc::{build_crossed_fodc, build_higher_forms, truncate_dc_degree2, twisted_dc};
use crate::examples::torus::{base_index, torus_base, torus_cleft};
use crate::fodc::{build_laurent_q_calculus, check_sigma_twisted_module_calculus, qform_index, zero_calculus};
use crate::hopf::{build_laurent_hopf, group_index, laurent_index};
use crate::report::{CheckEntry, Status};
use crate::scalars::{CycScalar, RootOfUnity};
use proptest::prelude::*;
use std::sync::Arc;

fn failures(r: &CheckReport) -> Vec<&CheckEntry> {
    r.failures().collect()
}

fn torus_zero_base() -> CrossedFodc {
    let (_, data) = torus_cleft(RootOfUnity::primitive(8));
    let cc = cleft_to_crossed(&data, 2).unwrap();
    let qcalc = build_laurent_q_calculus(RootOfUnity::new(8, 2)).unwrap();
    build_crossed_fodc(&cc.crossed, &zero_calculus(&torus_base()), &qcalc, 2).unwrap()
}

fn regular_c2() -> VComodule {
    VComodule {
        name: "k[C2]".into(),
        basis: vec![group_index(0), group_index(1)],
        coaction: map1(|v| basis(&BasisIndex::pair(v, v))),
    }
}

#[test]
fn radford_vertical_map_is_exact() {
    let (_, cf) = radford_crossed();
    let vd = vertical_map(&cf, 0).unwrap();
    assert!(vd.report.passed(), "{:?}", failures(&vd.report));
    assert_eq!(vd.coinv.space.dim(), 1);
    let exact = check_atiyah_exact(&vd, None, 1, 0);
    assert!(exact.passed(), "{:?}", failures(&exact));
    let horizontal = cf.fodc.form_elements(0).iter().filter(|w| w.tag() == "hor").count();
    assert_eq!(
        exact.get("atiyah-kernel").unwrap().detail.as_deref(),
        Some(format!("dim ker(ver) = {horizontal}").as_str())
    );
    assert_eq!(exact.status("atiyah-surjective"), Some(Status::Pass));
}

#[test]
fn c2_maurer_cartan_at_the_generator() {
    let (r, _) = radford();
    let h_calc = c2_calc(&r.group);
    let coinv = coinvariant_forms(&h_calc, &r.group, 0).unwrap();
    assert!(coinv.report.passed(), "{:?}", failures(&coinv.report));
    let abar = basis(&group_index(1));
    // ϖ(ā − 1) = S(ā) d ā
    let expected = h_calc.left_act(&r.group.s(&abar), &h_calc.diff(&abar));
    let varpi = abar.sub(&r.group.one()).map_linear(|x| (coinv.maurer_cartan)(x));
    assert_eq!(varpi, expected);
    assert!(!varpi.is_zero());
    assert!(coinv.space.contains(&varpi));
}

#[test]
fn q_calculus_has_inverse_dt_coinvariant() {
    let qcalc = build_laurent_q_calculus(RootOfUnity::new(8, 2)).unwrap();
    let coinv = coinvariant_forms(&qcalc, &build_laurent_hopf(), 2).unwrap();
    assert!(!coinv.complete);
    assert!(coinv.space.contains(&basis(&qform_index(-1))));
    assert_eq!(coinv.space.dim(), 1);
    assert_eq!(coinv.report.status("maurer-cartan-coinvariant"), Some(Status::WindowVerified));
}

#[test]
fn torus_vertical_map_moves_the_degree_into_a() {
    let cf = torus_zero_base();
    let vd = vertical_map(&cf, 2).unwrap();
    assert!(vd.report.passed(), "{:?}", failures(&vd.report));
    for (l, n) in [(0, 0), (2, -1), (-1, 3)] {
        let w = crate::crossed_calc::ver_index(&base_index(l), &qform_index(n));
        let expected = basis(&vt_index(&crossed_index(&base_index(l), &laurent_index(n + 1)), &qform_index(-1)));
        assert_eq!((vd.ver)(&w), expected);
    }
}

#[test]
fn torus_atiyah_sequence_is_exact_in_degrees_one_and_two() {
    let cf = torus_zero_base();
    let vd = vertical_map(&cf, 2).unwrap();
    let tc =
        check_sigma_twisted_module_calculus(&cf.b_calc, &cf.crossed.hopf, &cf.crossed.measure, &cf.crossed.cocycle, 2)
            .unwrap();
    let b_dc = twisted_dc(&cf.b_calc, &cf.crossed.measure, &tc);
    let (h_dc, _) = truncate_dc_degree2(&cf.h_calc, 2).unwrap();
    let hf = build_higher_forms(&cf.crossed, &b_dc, &h_dc, 2).unwrap();
    let r = check_atiyah_exact(&vd, Some(HigherAtiyah { total: &hf.dc, hopf_dc: &h_dc }), 2, 2);
    assert!(r.passed(), "{:?}", failures(&r));
    assert_eq!(r.status("atiyah-kernel"), Some(Status::WindowVerified));
    assert!(r.get("atiyah-surjective-2").is_some());
}

#[test]
fn smash_demo_atiyah_sequence_is_exact() {
    let d = demo();
    let vd = vertical_map(&d.calculus, 2).unwrap();
    assert!(vd.report.passed(), "{:?}", failures(&vd.report));
    let r = check_atiyah_exact(&vd, None, 1, 2);
    assert!(r.passed(), "{:?}", failures(&r));
}

#[test]
fn canonical_connection_is_strong() {
    let (_, cf) = radford_crossed();
    let vd = vertical_map(&cf, 0).unwrap();
    let (c, r) = canonical_connection(&vd, 0);
    assert!(r.passed(), "{:?}", failures(&r));
    assert_eq!(r.status("strong"), Some(Status::Pass));
    let gamma = vd.coinv.basis()[0].clone();
    assert_eq!(c.apply(&vt(&cf.fodc.algebra.one(), &gamma)), ver(&cf.crossed.base.one(), &gamma));
}

#[test]
fn canonical_connection_on_smash_demo() {
    let d = demo();
    let vd = vertical_map(&d.calculus, 2).unwrap();
    let (_, r) = canonical_connection(&vd, 2);
    assert!(r.passed(), "{:?}", failures(&r));
    assert_eq!(r.status("strong"), Some(Status::WindowVerified));
}

#[test]
fn connection_and_form_round_trip() {
    let (_, cf) = radford_crossed();
    let vd = vertical_map(&cf, 0).unwrap();
    let (ts, _, _) = tangent_and_fields(&vd, 0).unwrap();
    let (c, _) = canonical_connection(&vd, 0);
    let (form, r) = connection_form_bijection(&vd, &ts, &ConnectionData::Connection(c.clone()), 0).unwrap();
    assert!(r.passed(), "{:?}", failures(&r));
    let ConnectionData::Form(phi) = form else { panic!("expected a connection form") };
    assert_eq!(phi.components.len(), 1);
    assert_eq!(phi.components[0], ver(&cf.crossed.base.one(), &ts.forms[0]));
    let (back, r) = connection_form_bijection(&vd, &ts, &ConnectionData::Form(phi), 0).unwrap();
    assert!(r.passed(), "{:?}", failures(&r));
    let ConnectionData::Connection(c2) = back else { panic!("expected a connection") };
    for v in vd.test_elements(0) {
        assert_eq!(c2.apply(&v), c.apply(&v));
    }
}

#[test]
fn invalid_inputs_are_named() {
    let (_, cf) = radford_crossed();
    let vd = vertical_map(&cf, 0).unwrap();
    let (ts, _, _) = tangent_and_fields(&vd, 0).unwrap();
    let zero_form = ConnectionForm { components: vec![FreeVector::zero()] };
    match connection_form_bijection(&vd, &ts, &ConnectionData::Form(zero_form), 0) {
        Err(QpbError::InvalidInput { check, .. }) => assert_eq!(check, "form-vertical-part"),
        other => panic!("unexpected {:?}", other.map(|(_, r)| r)),
    }
    let zero = Connection::new(|_| FreeVector::zero());
    match connection_form_bijection(&vd, &ts, &ConnectionData::Connection(zero), 0) {
        Err(QpbError::InvalidInput { check, .. }) => assert_eq!(check, "ver-c-identity"),
        other => panic!("unexpected {:?}", other.map(|(_, r)| r)),
    }
}

#[test]
fn radford_tangent_space_and_fields() {
    let (_, cf) = radford_crossed();
    let vd = vertical_map(&cf, 0).unwrap();
    let (ts, fields, r) = tangent_and_fields(&vd, 0).unwrap();
    assert!(r.passed(), "{:?}", failures(&r));
    assert_eq!(ts.dim(), 1);
    let omega = ver(&cf.crossed.base.one(), &ts.forms[0]);
    assert_eq!(fields.apply(0, &omega), cf.fodc.algebra.one());
}

#[test]
fn tangent_space_is_refused_on_the_torus() {
    let cf = torus_zero_base();
    let vd = vertical_map(&cf, 2).unwrap();
    assert!(matches!(tangent_and_fields(&vd, 2), Err(QpbError::InfiniteCoinvariants(_))));
}

#[test]
fn covariant_derivative_on_radford() {
    let (_, cf) = radford_crossed();
    let bundle = covariant_derivative(&cf, &regular_c2(), None, 0).unwrap();
    assert!(bundle.report.passed(), "{:?}", failures(&bundle.report));
    assert_eq!(bundle.sections.len(), 8);
    assert!(bundle.complete);
}

#[test]
fn zero_base_calculus_gives_zero_derivative() {
    let (r, cc) = radford();
    let cf = build_crossed_fodc(&cc.crossed, &zero_calculus(&r.h1), &c2_calc(&r.group), 0).unwrap();
    let bundle = covariant_derivative(&cf, &regular_c2(), None, 0).unwrap();
    assert!(bundle.report.passed(), "{:?}", failures(&bundle.report));
    assert!(bundle.sections.iter().all(|e| bundle.nabla(e).is_zero()));
}

#[test]
fn infinite_total_space_needs_declared_sections() {
    let d = demo();
    let trivial = VComodule {
        name: "k".into(),
        basis: vec![BasisIndex::new("v", &[])],
        coaction: map1(|v| basis(v).tensor(&basis(&laurent_index(0)))),
    };
    assert!(matches!(covariant_derivative(&d.calculus, &trivial, None, 1), Err(QpbError::CoinvariantsNotComputable)));
    let v = BasisIndex::new("v", &[]);
    let family: SectionFamily = {
        let v = v.clone();
        Arc::new(move |w| (-w..=w).map(|l| section(&base_index(l), &laurent_index(0), &v)).collect())
    };
    let bundle = covariant_derivative(&d.calculus, &trivial, Some(family), 1).unwrap();
    assert!(bundle.report.passed(), "{:?}", failures(&bundle.report));
    assert_eq!(bundle.report.status("left-leibniz"), Some(Status::WindowVerified));
    let bogus: SectionFamily = Arc::new(move |_| vec![section(&base_index(0), &laurent_index(1), &v)]);
    assert!(matches!(covariant_derivative(&d.calculus, &trivial, Some(bogus), 1), Err(QpbError::NotCoinvariant(_))));
}

#[test]
fn strong_section_splits_multiplication() {
    let (r, cc) = radford();
    let cleft = CleftData::with_subalgebra(r.comodule(), r.h1.clone(), r.cleaving());
    let report = check_strong_section(&cc, &cleft, 0);
    assert!(report.passed(), "{:?}", failures(&report));
    assert_eq!(report.status("section-base"), Some(Status::Pass));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn canonical_connection_is_left_linear_on_combinations(
        xs in prop::collection::vec(-3i64..=3, 8),
        vs in prop::collection::vec(-3i64..=3, 8),
    ) {
        let (_, cf) = radford_crossed();
        let vd = vertical_map(&cf, 0).unwrap();
        let (c, _) = canonical_connection(&vd, 0);
        let els = cf.fodc.algebra.elements(0);
        let x = FreeVector::from_terms(els.iter().cloned().zip(xs.iter().map(|&n| CycScalar::from_int(n))));
        let tests = vd.test_elements(0);
        let v = tests.iter().zip(&vs).fold(FreeVector::zero(), |acc, (t, &n)| acc.add(&t.scale(&CycScalar::from_int(n))));
        prop_assert_eq!(c.apply(&vd.act(&x, &v)), cf.fodc.left_act(&x, &c.apply(&v)));
        prop_assert_eq!(vd.ver_v(&c.apply(&v)), v);
    }
}
