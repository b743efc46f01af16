use super::{Fodc, FodcError};
use crate::crossed::{Cocycle, Measure};
use crate::hopf::{AlgebraPresentation, HopfData};
use crate::linalg::{map2, BasisIndex, FreeVector, LinearSystem, Map2, Subspace};
use crate::report::{mismatch, pairs, triple_window, triples, CheckReport, Scope};

/// The derived action h·(b d b') = (h₁·b) d(h₂·b') on Ω¹(B) and the report
/// on the twisted-module identities.
#[derive(Clone)]
pub struct TwistedCalculus {
    pub action: Map2,
    pub report: CheckReport,
}

fn basis(i: &BasisIndex) -> FreeVector {
    FreeVector::basis(i.clone())
}

/// Σ c (h₁·a) d(h₂·b) over a combination of pairs (a, b).
fn candidate(calc: &Fodc, h: &HopfData, m: &Measure, x: &BasisIndex, v: &FreeVector) -> FreeVector {
    let dx = h.delta_idx(x);
    v.map_linear(|p| {
        let (a, b) = p.split2();
        dx.map_terms(|t| {
            let ha = (m.act)(t[0], a);
            let dhb = calc.diff(&(m.act)(t[1], b));
            calc.left_act(&ha, &dhb)
        })
    })
}

pub fn check_sigma_twisted_module_calculus(
    calc: &Fodc,
    h: &HopfData,
    m: &Measure,
    s: &Cocycle,
    window: i64,
) -> Result<TwistedCalculus, FodcError> {
    let b = &calc.algebra;
    let scope = calc.scope(window).join(h.algebra.scope(window));
    let tw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let tscope = calc.scope(tw).join(h.algebra.scope(tw));
    let (hs, bs, forms) = (h.algebra.elements(window), b.elements(window), calc.form_elements(window));
    let (hs3, bs3, forms3) = (h.algebra.elements(tw), b.elements(tw), calc.form_elements(tw));

    // Well-definedness: every relation Σ a d b = 0 among tested pairs must be
    // sent to zero by the candidate action.
    let domain: Vec<BasisIndex> = bs.iter().flat_map(|x| bs.iter().map(move |y| BasisIndex::pair(x, y))).collect();
    let relations = LinearSystem::from_images(&domain, |p| calc.eval_pairs(&basis(p))).kernel();
    for x in &hs {
        for rel in relations.basis() {
            if !candidate(calc, h, m, x, rel).is_zero() {
                let (lead, c) = rel.leading().expect("nonzero relation");
                let first = FreeVector::term(lead.clone(), c.clone());
                let second = first.sub(rel);
                return Err(FodcError::NotWellDefined {
                    h: x.to_string(),
                    first: first.to_string(),
                    second: second.to_string(),
                });
            }
        }
    }
    let mut report = CheckReport::new();
    report.record(
        "well-defined",
        scope,
        true,
        None,
        Some(format!("{} relations among {} presentations", relations.dim(), domain.len())),
    );

    let action: Map2 = {
        let (calc, h, m) = (calc.clone(), h.clone(), m.clone());
        map2(move |x, w| candidate(&calc, &h, &m, x, &(calc.presentation)(w)))
    };
    let act = |x: &BasisIndex, w: &FreeVector| w.map_linear(|f| action(x, f));
    let act_v = |hv: &FreeVector, w: &FreeVector| hv.map_linear(|x| act(x, w));

    report.check("comp", tscope, triples(&hs3, &bs3, &bs3), |(x, a, c)| {
        let lhs = act(x, &calc.left_act(&basis(a), &(calc.d)(c)));
        let rhs = h.delta_idx(x).map_terms(|t| calc.left_act(&(m.act)(t[0], a), &act(t[1], &(calc.d)(c))));
        mismatch(format!("({x}, {a}, {c})"), &lhs, &rhs)
    });
    report.check("H-lin", scope, pairs(&hs, &bs), |(x, a)| {
        mismatch(format!("({x}, {a})"), &calc.diff(&(m.act)(x, a)), &act(x, &(calc.d)(a)))
    });
    let hh = pairs(&hs, &hs);
    report.check("dsigma", scope, hh.iter(), |(x, y)| {
        let v = calc.diff(&(s.sigma)(x, y));
        (!v.is_zero()).then(|| format!("d(σ({x}⊗{y})) = {v}"))
    });
    report.check("dsigma-inverse", scope, hh.iter(), |(x, y)| {
        let v = calc.diff(&(s.sigma_inv)(x, y));
        (!v.is_zero()).then(|| format!("d(σ⁻¹({x}⊗{y})) = {v}"))
    });
    report.check("twisted-bimodule-unit", scope, forms.iter(), |w| mismatch(w, &act_v(&h.one(), &basis(w)), &basis(w)));
    report.check("twisted-bimodule-left", tscope, triples(&hs3, &bs3, &forms3), |(x, a, w)| {
        let lhs = act(x, &(calc.left)(a, w));
        let rhs = h.delta_idx(x).map_terms(|t| calc.left_act(&(m.act)(t[0], a), &action(t[1], w)));
        mismatch(format!("({x}, {a}, {w})"), &lhs, &rhs)
    });
    report.check("twisted-bimodule-right", tscope, triples(&hs3, &forms3, &bs3), |(x, w, a)| {
        let lhs = act(x, &(calc.right)(w, a));
        let rhs = h.delta_idx(x).map_terms(|t| calc.right_act(&action(t[0], w), &(m.act)(t[1], a)));
        mismatch(format!("({x}, {w}, {a})"), &lhs, &rhs)
    });
    report.check("twisted-bimodule-iii", tscope, triples(&hs3, &hs3, &forms3), |(x, y, w)| {
        let lhs = act(x, &action(y, w));
        let (dx, dy) = (h.delta2_idx(x), h.delta2_idx(y));
        let mut rhs = FreeVector::zero();
        for (p, c) in dx.iter() {
            let (x1, x2, x3) = p.split3();
            for (q, e) in dy.iter() {
                let (y1, y2, y3) = q.split3();
                let mid = act_v(&h.algebra.mul_idx(x2, y2), &basis(w));
                let term = calc.right_act(&calc.left_act(&(s.sigma)(x1, y1), &mid), &(s.sigma_inv)(x3, y3));
                rhs.add_scaled(&term, &c.mul(e));
            }
        }
        mismatch(format!("({x}, {y}, {w})"), &lhs, &rhs)
    });
    Ok(TwistedCalculus { action, report })
}

/// Shows that any calculus on B with d∘σ = 0 has d(b) = 0 for tested b:
/// d_u(b) lies in the sub-bimodule of the universal calculus generated by
/// the d_u(σ(h⊗h')). Products range over a window one wider than the
/// tested elements.
pub fn forced_zero_by_cocycle(b: &AlgebraPresentation, h: &HopfData, s: &Cocycle, window: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let scope = b.scope(window).join(h.algebra.scope(window));
    let hs = h.algebra.elements(window);
    let mut values = Subspace::new();
    for x in &hs {
        for y in &hs {
            values.insert((s.sigma)(x, y));
        }
    }
    let wide = b.elements(window + 1);
    let du = |v: &FreeVector| b.one().tensor(v).sub(&v.tensor(&b.one()));
    let mut generated = Subspace::new();
    for v in values.basis() {
        let dv = du(v);
        for x in &wide {
            for y in &wide {
                generated.insert(dv.map_terms(|t| b.mul_idx(x, t[0]).tensor(&b.mul_idx(t[1], y))));
            }
        }
    }
    let detail =
        Some(format!("σ values span dimension {}, generated sub-bimodule dimension {}", values.dim(), generated.dim()));
    report.check("forced-zero", scope, b.elements(window), |e| {
        let target = du(&basis(e));
        (!generated.contains(&target)).then(|| format!("d_u({e}) is not forced to vanish"))
    });
    if let Some(last) = report.checks.last_mut() {
        last.detail = detail;
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::{cleft_to_crossed, CleftData};
    use crate::examples::torus::{torus_base, torus_cleft};
    use crate::fodc::{build_kahler_laurent, universal_d, universal_fodc, universal_quotient, zero_calculus};
    use crate::hopf::{build_radford, group_index, laurent_index};
    use crate::report::Status;
    use crate::scalars::RootOfUnity;

    #[test]
    fn radford_calculus_with_closed_square_is_twisted() {
        let r = build_radford(2, 2, RootOfUnity::primitive(4)).unwrap();
        let cc = cleft_to_crossed(&CleftData::with_subalgebra(r.comodule(), r.h1.clone(), r.cleaving()), 0).unwrap();
        let calc = universal_quotient(&r.h1, &[universal_d(&r.h1, &r.a_pow(2))]).unwrap();
        assert!(calc.diff(&r.a_pow(2)).is_zero());
        let tc =
            check_sigma_twisted_module_calculus(&calc, &r.group, &cc.crossed.measure, &cc.crossed.cocycle, 0).unwrap();
        assert!(tc.report.passed(), "{:?}", tc.report.failures().collect::<Vec<_>>());
        assert_eq!(tc.report.get("dsigma").unwrap().status, Status::Pass);
    }

    #[test]
    fn universal_calculus_on_radford_base_fails_dsigma() {
        let r = build_radford(2, 2, RootOfUnity::primitive(4)).unwrap();
        let cc = cleft_to_crossed(&CleftData::with_subalgebra(r.comodule(), r.h1.clone(), r.cleaving()), 0).unwrap();
        let calc = universal_fodc(&r.h1).unwrap();
        let tc =
            check_sigma_twisted_module_calculus(&calc, &r.group, &cc.crossed.measure, &cc.crossed.cocycle, 0).unwrap();
        let dsigma = tc.report.get("dsigma").unwrap();
        assert!(dsigma.status.is_fail());
        let abar = group_index(1);
        assert!(dsigma.witness.as_deref().unwrap().starts_with(&format!("d(σ({abar}⊗{abar}))")));
        assert_eq!(tc.report.get("H-lin").unwrap().status, Status::Pass);
    }

    #[test]
    fn torus_kahler_calculus_fails_dsigma() {
        let (_, data) = torus_cleft(RootOfUnity::primitive(8));
        let cc = cleft_to_crossed(&data, 2).unwrap();
        let calc = build_kahler_laurent(&torus_base());
        let tc =
            check_sigma_twisted_module_calculus(&calc, &cc.crossed.hopf, &cc.crossed.measure, &cc.crossed.cocycle, 2)
                .unwrap();
        assert!(tc.report.get("dsigma").unwrap().status.is_fail());
        let v = calc.diff(&(cc.crossed.cocycle.sigma)(&laurent_index(1), &laurent_index(-1)));
        assert!(!v.is_zero());
        assert_eq!(tc.report.get("H-lin").unwrap().status, Status::WindowVerified);
    }

    #[test]
    fn zero_calculus_on_torus_base_is_twisted() {
        let (_, data) = torus_cleft(RootOfUnity::primitive(8));
        let cc = cleft_to_crossed(&data, 2).unwrap();
        let calc = zero_calculus(&torus_base());
        let tc =
            check_sigma_twisted_module_calculus(&calc, &cc.crossed.hopf, &cc.crossed.measure, &cc.crossed.cocycle, 2)
                .unwrap();
        assert!(tc.report.passed());
    }

    #[test]
    fn torus_cocycle_forces_zero_calculus() {
        let (_, data) = torus_cleft(RootOfUnity::primitive(8));
        let cc = cleft_to_crossed(&data, 2).unwrap();
        let rep = forced_zero_by_cocycle(&torus_base(), &cc.crossed.hopf, &cc.crossed.cocycle, 2);
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(rep.get("forced-zero").unwrap().status, Status::WindowVerified);
    }

    #[test]
    fn trivial_cocycle_forces_nothing() {
        let (_, data) = torus_cleft(RootOfUnity::primitive(8));
        let cc = cleft_to_crossed(&data, 1).unwrap();
        let trivial = Cocycle::trivial(&cc.crossed.hopf, &torus_base());
        let rep = forced_zero_by_cocycle(&torus_base(), &cc.crossed.hopf, &trivial, 1);
        let check = rep.get("forced-zero").unwrap();
        assert!(check.status.is_fail());
        assert!(check.witness.as_deref().unwrap().contains("w[-1]"));
    }
}
