//! The crossed product calculus on B #_σ H, its higher forms, the smash
//! classification checks and de Rham cohomology.

mod classify;
mod graded;

use crate::crossed::{crossed_index, CrossedError, CrossedProduct};
use crate::fodc::{check_fodc, check_sigma_twisted_module_calculus, Fodc, FodcError, FormCoaction};
use crate::linalg::{map1, map2, Basis, BasisIndex, FreeVector, Map2};
use crate::report::{mismatch, pairs, triple_window, triples, CheckReport, Scope};

pub use classify::{classify_smash, ClassificationReport, Pullback};
pub use graded::{
    build_higher_forms, check_graded_dc, compare_with_first_order, de_rham_cohomology, first_order_dc, hf_index,
    hf_split, truncate_dc_degree2, twisted_dc, CohomologyDegree, Graded1, Graded2, GradedAction, GradedDc, HigherForms,
    NotTruncatable,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CrossedCalcError {
    #[error("the calculus on {0} has no left coaction; a bicovariant calculus is required")]
    MissingLeftCoaction(String),
    #[error("the calculus on {0} has no right coaction; a bicovariant calculus is required")]
    MissingRightCoaction(String),
    #[error("hypothesis '{check}' failed: {witness}")]
    Hypothesis { check: String, witness: String },
    #[error("not a trivial extension: {0}")]
    NotTrivialExtension(String),
    #[error("{0} requires a finite basis")]
    NotFinite(&'static str),
    #[error(transparent)]
    Fodc(#[from] FodcError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
}

pub(crate) fn first_hypothesis_failure(report: &CheckReport) -> Result<(), CrossedCalcError> {
    match report.failures().next() {
        Some(f) => {
            Err(CrossedCalcError::Hypothesis { check: f.name.clone(), witness: f.witness.clone().unwrap_or_default() })
        }
        None => Ok(()),
    }
}

/// Index of β ⊗ h in Ω¹(B) ⊗ H.
pub fn hor_index(beta: &BasisIndex, h: &BasisIndex) -> BasisIndex {
    BasisIndex::wrap("hor", &[beta.clone(), h.clone()])
}

/// Index of b ⊗ γ in B ⊗ Ω¹(H).
pub fn ver_index(b: &BasisIndex, gamma: &BasisIndex) -> BasisIndex {
    BasisIndex::wrap("ver", &[b.clone(), gamma.clone()])
}

pub fn hor(beta: &FreeVector, h: &FreeVector) -> FreeVector {
    beta.bilinear(h, |x, y| FreeVector::basis(hor_index(x, y)))
}

pub fn ver(b: &FreeVector, gamma: &FreeVector) -> FreeVector {
    b.bilinear(gamma, |x, y| FreeVector::basis(ver_index(x, y)))
}

fn basis(i: &BasisIndex) -> FreeVector {
    FreeVector::basis(i.clone())
}

/// Ω¹(B #_σ H) = (Ω¹(B) ⊗ H) ⊕ (B ⊗ Ω¹(H)) with d(b⊗h) = d_B b ⊗ h + b ⊗ d_H h.
#[derive(Clone)]
pub struct CrossedFodc {
    pub crossed: CrossedProduct,
    pub b_calc: Fodc,
    pub h_calc: Fodc,
    /// The action h·β of H on Ω¹(B).
    pub twisted: Map2,
    pub fodc: Fodc,
    /// Checks on Ω¹(B) run before assembling.
    pub hypotheses: CheckReport,
}

impl CrossedFodc {
    pub fn element(&self, b: &FreeVector, h: &FreeVector) -> FreeVector {
        b.tensor(h)
    }
}

fn left_coaction(h_calc: &Fodc) -> Result<FormCoaction, CrossedCalcError> {
    h_calc.left_coaction.clone().ok_or_else(|| CrossedCalcError::MissingLeftCoaction(h_calc.algebra.name.clone()))
}

fn right_coaction(h_calc: &Fodc) -> Result<FormCoaction, CrossedCalcError> {
    h_calc.right_coaction.clone().ok_or_else(|| CrossedCalcError::MissingRightCoaction(h_calc.algebra.name.clone()))
}

/// Assembles the structure maps without checking the hypotheses on Ω¹(B).
fn assemble(cp: &CrossedProduct, b_calc: &Fodc, h_calc: &Fodc, twisted: &Map2) -> Result<Fodc, CrossedCalcError> {
    let lc = left_coaction(h_calc)?;
    let rc = right_coaction(h_calc)?;
    let (hopf, base) = (cp.hopf.clone(), cp.base.clone());
    let (m, s) = (cp.measure.clone(), cp.cocycle.clone());

    let left = {
        let (hopf, base, bc, hc, m, s, tw, lc) = (
            hopf.clone(),
            base.clone(),
            b_calc.clone(),
            h_calc.clone(),
            m.clone(),
            s.clone(),
            twisted.clone(),
            lc.clone(),
        );
        map2(move |p, w| {
            let (b1, h1) = p.split2();
            let outer = hopf.delta2_idx(h1);
            let mut out = FreeVector::zero();
            match w.tag() {
                // b'(h'₁·β)σ(h'₂⊗h₁) ⊗ h'₃h₂
                "hor" => {
                    let (beta, h) = (w.idx(0), w.idx(1));
                    let dh = hopf.delta_idx(h);
                    for (t, c) in outer.iter() {
                        let (x1, x2, x3) = t.split3();
                        let acted = bc.left_act(&basis(b1), &tw(x1, beta));
                        for (u, e) in dh.iter() {
                            let (y1, y2) = u.split2();
                            let form = bc.right_act(&acted, &(s.sigma)(x2, y1));
                            out.add_scaled(&hor(&form, &hopf.algebra.mul_idx(x3, y2)), &c.mul(e));
                        }
                    }
                }
                // b'(h'₁·b)σ(h'₂⊗γ₋₁) ⊗ h'₃γ₀
                _ => {
                    let (b, g) = (w.idx(0), w.idx(1));
                    let lam = (lc.forms)(g);
                    for (t, c) in outer.iter() {
                        let (x1, x2, x3) = t.split3();
                        let acted = base.mul(&basis(b1), &(m.act)(x1, b));
                        for (u, e) in lam.iter() {
                            let (k, g0) = u.split2();
                            let coeff = base.mul(&acted, &(s.sigma)(x2, k));
                            out.add_scaled(&ver(&coeff, &(hc.left)(x3, g0)), &c.mul(e));
                        }
                    }
                }
            }
            out
        })
    };
    let right = {
        let (hopf, base, bc, hc, m, s, lc) =
            (hopf.clone(), base.clone(), b_calc.clone(), h_calc.clone(), m.clone(), s.clone(), lc.clone());
        map2(move |w, p| {
            let (b1, h1) = p.split2();
            let dh1 = hopf.delta_idx(h1);
            let mut out = FreeVector::zero();
            match w.tag() {
                // β(h₁·b')σ(h₂⊗h'₁) ⊗ h₃h'₂
                "hor" => {
                    let (beta, h) = (w.idx(0), w.idx(1));
                    for (t, c) in hopf.delta2_idx(h).iter() {
                        let (x1, x2, x3) = t.split3();
                        let acted = (m.act)(x1, b1);
                        for (u, e) in dh1.iter() {
                            let (y1, y2) = u.split2();
                            let coeff = base.mul(&acted, &(s.sigma)(x2, y1));
                            let form = bc.right_act(&basis(beta), &coeff);
                            out.add_scaled(&hor(&form, &hopf.algebra.mul_idx(x3, y2)), &c.mul(e));
                        }
                    }
                }
                // b(γ₋₂·b')σ(γ₋₁⊗h'₁) ⊗ γ₀h'₂
                _ => {
                    let (b, g) = (w.idx(0), w.idx(1));
                    let lam2 = (lc.forms)(g).map_factor(0, 2, |k| hopf.delta_idx(k));
                    for (t, c) in lam2.iter() {
                        let (k1, k2, g0) = t.split3();
                        let acted = base.mul(&basis(b), &(m.act)(k1, b1));
                        for (u, e) in dh1.iter() {
                            let (y1, y2) = u.split2();
                            let coeff = base.mul(&acted, &(s.sigma)(k2, y1));
                            out.add_scaled(&ver(&coeff, &(hc.right)(g0, y2)), &c.mul(e));
                        }
                    }
                }
            }
            out
        })
    };
    let d = {
        let (bc, hc) = (b_calc.clone(), h_calc.clone());
        map1(move |p| {
            let (b, h) = p.split2();
            hor(&(bc.d)(b), &basis(h)).add(&ver(&basis(b), &(hc.d)(h)))
        })
    };
    let coaction = {
        let (hopf, rc) = (hopf.clone(), rc.clone());
        map1(move |w| match w.tag() {
            "hor" => {
                let beta = w.idx(0);
                hopf.delta_idx(w.idx(1)).map_terms(|t| basis(&BasisIndex::pair(&hor_index(beta, t[0]), t[1])))
            }
            _ => {
                let b = w.idx(0);
                (rc.forms)(w.idx(1)).map_terms(|t| basis(&BasisIndex::pair(&ver_index(b, t[0]), t[1])))
            }
        })
    };
    let presentation = {
        let (hopf, base, bc, hc, s) = (hopf.clone(), base.clone(), b_calc.clone(), h_calc.clone(), s.clone());
        map1(move |w| {
            let pair = |x: &FreeVector, y: &FreeVector| x.bilinear(y, |a, b| basis(&BasisIndex::pair(a, b)));
            let mut out = FreeVector::zero();
            match w.tag() {
                // x d_B y ⊗ h = (x⊗1) d(y⊗h) − (xy⊗1) d(1⊗h)
                "hor" => {
                    let h = basis(w.idx(1));
                    for (p, c) in (bc.presentation)(w.idx(0)).iter() {
                        let (x, y) = p.split2();
                        out.add_scaled(&pair(&basis(x).tensor(&hopf.one()), &basis(y).tensor(&h)), c);
                        out.add_scaled(
                            &pair(&base.mul_idx(x, y).tensor(&hopf.one()), &base.one().tensor(&h)),
                            &c.neg(),
                        );
                    }
                }
                // b ⊗ g d_H g' = (b σ⁻¹(g₁⊗g'₁) ⊗ g₂) d(1 ⊗ g'₂)
                _ => {
                    let b = basis(w.idx(0));
                    for (p, c) in (hc.presentation)(w.idx(1)).iter() {
                        let (g, g2) = p.split2();
                        let dg2 = hopf.delta_idx(g2);
                        for (t, e) in hopf.delta_idx(g).iter() {
                            let (x1, x2) = t.split2();
                            for (u, f) in dg2.iter() {
                                let (y1, y2) = u.split2();
                                let lhs = base.mul(&b, &(s.sigma_inv)(x1, y1)).tensor(&basis(x2));
                                out.add_scaled(&pair(&lhs, &base.one().tensor(&basis(y2))), &c.mul(e).mul(f));
                            }
                        }
                    }
                }
            }
            out
        })
    };
    let hor_basis = Basis::product(&b_calc.forms, &hopf.algebra.basis).map(|p| {
        let (x, y) = p.split2();
        hor_index(x, y)
    });
    let ver_basis = Basis::product(&base.basis, &h_calc.forms).map(|p| {
        let (x, y) = p.split2();
        ver_index(x, y)
    });
    Ok(Fodc {
        name: format!("crossed product calculus on {}", cp.algebra().name),
        algebra: cp.algebra().clone(),
        forms: Basis::union(&[hor_basis, ver_basis]),
        left,
        right,
        d,
        right_coaction: Some(FormCoaction { hopf, algebra: cp.comodule.coaction.clone(), forms: coaction }),
        left_coaction: None,
        presentation,
    })
}

/// Builds the crossed product calculus after checking that Ω¹(B) is a
/// σ-twisted H-module calculus and that Ω¹(H) is bicovariant.
pub fn build_crossed_fodc(
    cp: &CrossedProduct,
    b_calc: &Fodc,
    h_calc: &Fodc,
    window: i64,
) -> Result<CrossedFodc, CrossedCalcError> {
    left_coaction(h_calc)?;
    right_coaction(h_calc)?;
    let tc = check_sigma_twisted_module_calculus(b_calc, &cp.hopf, &cp.measure, &cp.cocycle, window)?;
    first_hypothesis_failure(&tc.report)?;
    let fodc = assemble(cp, b_calc, h_calc, &tc.action)?;
    Ok(CrossedFodc {
        crossed: cp.clone(),
        b_calc: b_calc.clone(),
        h_calc: h_calc.clone(),
        twisted: tc.action,
        fodc,
        hypotheses: tc.report,
    })
}

/// First-order calculus laws plus the generation identities, colinearity of
/// d and differentiability of the coaction.
pub fn verify_crossed_fodc(cf: &CrossedFodc, window: i64) -> CheckReport {
    let mut report = check_fodc(&cf.fodc, window);
    let (cp, f) = (&cf.crossed, &cf.fodc);
    let (hopf, base) = (&cp.hopf, &cp.base);
    let scope = f.scope(window).join(hopf.algebra.scope(window));
    let tw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let tscope = f.scope(tw).join(hopf.algebra.scope(tw));
    let (bs, hs) = (base.elements(window), hopf.algebra.elements(window));
    let (bs3, hs3) = (base.elements(tw), hopf.algebra.elements(tw));
    let hone = hopf.one();
    let el = |b: &FreeVector, h: &FreeVector| b.tensor(h);

    report.check("witness-horizontal", tscope, triples(&bs3, &bs3, &hs3), |(b, b2, h)| {
        let lhs = f
            .left_act(&el(&basis(b), &hone), &(f.d)(&crossed_index(b2, h)))
            .sub(&f.left_act(&el(&base.mul_idx(b, b2), &hone), &f.diff(&el(&base.one(), &basis(h)))));
        let rhs = hor(&cf.b_calc.left_act(&basis(b), &(cf.b_calc.d)(b2)), &basis(h));
        mismatch(format!("({b}, {b2}, {h})"), &lhs, &rhs)
    });
    report.check("witness-vertical", tscope, triples(&bs3, &hs3, &hs3), |(b, h, h2)| {
        let dh2 = hopf.delta_idx(h2);
        let mut lhs = FreeVector::zero();
        for (t, c) in hopf.delta_idx(h).iter() {
            let (x1, x2) = t.split2();
            for (u, e) in dh2.iter() {
                let (y1, y2) = u.split2();
                let coeff = el(&base.mul(&basis(b), &(cp.cocycle.sigma_inv)(x1, y1)), &basis(x2));
                lhs.add_scaled(&f.left_act(&coeff, &f.diff(&el(&base.one(), &basis(y2)))), &c.mul(e));
            }
        }
        let rhs = ver(&basis(b), &cf.h_calc.left_act(&basis(h), &(cf.h_calc.d)(h2)));
        mismatch(format!("({b}, {h}, {h2})"), &lhs, &rhs)
    });
    let lc = cf.h_calc.left_coaction.as_ref().expect("built from a bicovariant calculus");
    let rc = cf.h_calc.right_coaction.as_ref().expect("built from a bicovariant calculus");
    // Ω¹((B #_σ H) ⊗ H) = Ω¹(B #_σ H) ⊗ H ⊕ (B #_σ H) ⊗ Ω¹(H)
    let first = |w: &BasisIndex, h: &BasisIndex| basis(&BasisIndex::wrap("forms-h", &[w.clone(), h.clone()]));
    let second = |a: &BasisIndex, g: &BasisIndex| basis(&BasisIndex::wrap("a-forms", &[a.clone(), g.clone()]));
    let rho_hat = |w: &BasisIndex| -> FreeVector {
        match w.tag() {
            "hor" => hopf.delta_idx(w.idx(1)).map_terms(|t| first(&hor_index(w.idx(0), t[0]), t[1])),
            _ => {
                let b = w.idx(0);
                let r = (rc.forms)(w.idx(1)).map_terms(|t| first(&ver_index(b, t[0]), t[1]));
                r.add(&(lc.forms)(w.idx(1)).map_terms(|t| second(&crossed_index(b, t[0]), t[1])))
            }
        }
    };
    let bh: Vec<BasisIndex> = pairs(&bs, &hs).into_iter().map(|(b, h)| crossed_index(b, h)).collect();
    report.check("rho-differentiable", scope, bh.iter(), |p| {
        let (b, h) = p.split2();
        let lhs = (f.d)(p).map_linear(rho_hat);
        let mut rhs = FreeVector::zero();
        for (t, c) in hopf.delta_idx(h).iter() {
            let (x1, x2) = t.split2();
            rhs.add_scaled(&(f.d)(&crossed_index(b, x1)).map_linear(|w| first(w, x2)), c);
            rhs.add_scaled(&(cf.h_calc.d)(x2).map_linear(|g| second(&crossed_index(b, x1), g)), c);
        }
        mismatch(p, &lhs, &rhs)
    });
    report
}

/// Elements of a windowed basis ordered by the first window containing
/// them, newest elements in descending order within each window.
fn by_shell(elements: impl Fn(i64) -> Vec<BasisIndex>, finite: bool, window: i64) -> Vec<BasisIndex> {
    if finite {
        return elements(0);
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for w in 0..=window {
        let mut shell: Vec<BasisIndex> = elements(w).into_iter().filter(|x| !seen.contains(x)).collect();
        shell.reverse();
        for x in shell {
            seen.insert(x.clone());
            out.push(x);
        }
    }
    out
}

/// Runs the Leibniz rule on products (1⊗h)(1⊗h') for a calculus on B that
/// is a σ-twisted bimodule but need not satisfy d_B∘σ = 0. The defect must
/// equal d_B(σ(h₁⊗h'₁)) ⊗ h₂h'₂; the "dsigma" entry fails with the first
/// pair where it is nonzero.
pub fn necessity_dsigma(
    cp: &CrossedProduct,
    b_calc: &Fodc,
    h_calc: &Fodc,
    window: i64,
) -> Result<CheckReport, CrossedCalcError> {
    let tc = check_sigma_twisted_module_calculus(b_calc, &cp.hopf, &cp.measure, &cp.cocycle, window)?;
    let f = assemble(cp, b_calc, h_calc, &tc.action)?;
    let hopf = &cp.hopf;
    let scope = hopf.algebra.scope(window);
    let alg = hopf.algebra.clone();
    let hs = by_shell(move |w| alg.elements(w), hopf.is_finite(), window);
    let hh = pairs(&hs, &hs);
    let one_b = cp.base.one();
    let defect = |h: &BasisIndex, g: &BasisIndex| {
        let (x, y) = (one_b.tensor(&basis(h)), one_b.tensor(&basis(g)));
        let lhs = f.diff(&cp.mul(&x, &y));
        lhs.sub(&f.right_act(&f.diff(&x), &y)).sub(&f.left_act(&x, &f.diff(&y)))
    };
    let mut report = CheckReport::new();
    report.check("dsigma-identity", scope, hh.iter(), |(h, g)| {
        let dg = hopf.delta_idx(g);
        let mut expected = FreeVector::zero();
        for (t, c) in hopf.delta_idx(h).iter() {
            let (x1, x2) = t.split2();
            for (u, e) in dg.iter() {
                let (y1, y2) = u.split2();
                let ds = b_calc.diff(&(cp.cocycle.sigma)(x1, y1));
                expected.add_scaled(&hor(&ds, &hopf.algebra.mul_idx(x2, y2)), &c.mul(e));
            }
        }
        mismatch(format!("({h}, {g})"), &defect(h, g), &expected)
    });
    report.check("dsigma", scope, hh.iter(), |(h, g)| {
        let v = defect(h, g);
        (!v.is_zero()).then(|| {
            format!("at ({h}, {g}): d(σ({h}⊗{g})) = {}, Leibniz defect {v}", b_calc.diff(&(cp.cocycle.sigma)(h, g)))
        })
    });
    Ok(report)
}

#[cfg(test)]
pub(crate) mod tests;
