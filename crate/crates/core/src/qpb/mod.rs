//! Quantum principal bundle structure on B #_σ H: the vertical map, exactness
//! of the Atiyah sequence, connections and connection forms, the quantum
//! tangent space, and covariant derivatives on associated bundles.

mod associated;
mod connection;
mod tangent;

use std::collections::BTreeMap;

use crate::crossed::{crossed_index, CleftCrossed};
use crate::crossed_calc::{hf_index, hf_split, ver, CrossedFodc, GradedDc};
use crate::fodc::{Fodc, FormCoaction};
use crate::hopf::HopfData;
use crate::linalg::{map1, BasisIndex, FreeVector, LinearSystem, Map1, Subspace};
use crate::report::{mismatch, pairs, triple_window, CheckReport, Scope};

pub use associated::{covariant_derivative, section, AssociatedBundle, SectionFamily, VComodule};
pub use connection::{canonical_connection, connection_form_bijection, Connection, ConnectionData, ConnectionForm};
pub use tangent::{tangent_and_fields, tangent_index, FundamentalFields, TangentSpace};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum QpbError {
    #[error("the calculus on {0} has no left coaction")]
    MissingLeftCoaction(String),
    #[error("the calculus on {0} has no right coaction")]
    MissingRightCoaction(String),
    #[error("the space of left-coinvariant 1-forms of {0} is not known to be finite-dimensional")]
    InfiniteCoinvariants(String),
    #[error("E = (A ⊗ V)^coH cannot be computed over an infinite basis without a declared family")]
    CoinvariantsNotComputable,
    #[error("declared section {0} is not coinvariant")]
    NotCoinvariant(String),
    #[error("input fails '{check}': {witness}")]
    InvalidInput { check: String, witness: String },
}

fn basis(i: &BasisIndex) -> FreeVector {
    FreeVector::basis(i.clone())
}

/// Index of a ⊗ κ in (B #_σ H) ⊗ Ω¹(H).
pub fn vt_index(a: &BasisIndex, kappa: &BasisIndex) -> BasisIndex {
    BasisIndex::wrap("vt", &[a.clone(), kappa.clone()])
}

pub fn vt(a: &FreeVector, kappa: &FreeVector) -> FreeVector {
    a.bilinear(kappa, |x, y| basis(&vt_index(x, y)))
}

fn left_coaction(f: &Fodc) -> Result<&FormCoaction, QpbError> {
    f.left_coaction.as_ref().ok_or_else(|| QpbError::MissingLeftCoaction(f.algebra.name.clone()))
}

fn right_coaction(f: &Fodc) -> Result<&FormCoaction, QpbError> {
    f.right_coaction.as_ref().ok_or_else(|| QpbError::MissingRightCoaction(f.algebra.name.clone()))
}

/// Left-coinvariant 1-forms ker(λ − 1 ⊗ Id) and the Maurer–Cartan form
/// ϖ(h) = S(h₁) d h₂.
#[derive(Clone)]
pub struct CoinvariantForms {
    /// Echelon basis; exact for a finite calculus, else the forms found
    /// on the window.
    pub space: Subspace,
    pub maurer_cartan: Map1,
    /// Whether `space` is the whole coinvariant space.
    pub complete: bool,
    pub report: CheckReport,
}

impl CoinvariantForms {
    pub fn basis(&self) -> Vec<FreeVector> {
        self.space.basis().cloned().collect()
    }
}

pub fn coinvariant_forms(h_calc: &Fodc, hopf: &HopfData, window: i64) -> Result<CoinvariantForms, QpbError> {
    let lc = left_coaction(h_calc)?;
    let scope = h_calc.scope(window);
    let forms = h_calc.form_elements(window);
    let one = hopf.one();
    let space = LinearSystem::from_images(&forms, |g| (lc.forms)(g).sub(&one.tensor(&basis(g)))).kernel();
    let maurer_cartan: Map1 = {
        let (f, h) = (h_calc.clone(), hopf.clone());
        map1(move |x| h.delta_idx(x).map_terms(|t| f.left_act(&h.s(&basis(t[0])), &(f.d)(t[1]))))
    };
    let els = hopf.algebra.elements(window);
    let mut report = CheckReport::new();
    report.record("coinvariant-forms", scope, true, None, Some(format!("dimension {}", space.dim())));
    report.check("maurer-cartan-coinvariant", scope, els.iter(), |x| {
        let v = maurer_cartan(x);
        let lhs = v.map_linear(|g| (lc.forms)(g));
        mismatch(x, &lhs, &one.tensor(&v))
    });
    if h_calc.is_finite() && hopf.is_finite() {
        let image = Subspace::spanned_by(els.iter().map(|x| maurer_cartan(x)).collect::<Vec<_>>().iter());
        report.record(
            "maurer-cartan-surjective",
            scope,
            image.same_span(&space),
            Some(format!("image has dimension {} against {}", image.dim(), space.dim())),
            None,
        );
    }
    Ok(CoinvariantForms { space, maurer_cartan, complete: h_calc.is_finite(), report })
}

/// ver = p ∘ π₂ on Ω¹(B #_σ H) together with p and its inverse g.
#[derive(Clone)]
pub struct VerticalData {
    pub cf: CrossedFodc,
    pub coinv: CoinvariantForms,
    /// Ω¹(A) → A ⊗ ^{coH}Ω¹(H), on form indices.
    pub ver: Map1,
    /// b ⊗ γ ↦ (b ⊗ γ₋₂) ⊗ S(γ₋₁)γ₀, on `ver` form indices.
    pub p: Map1,
    /// (b ⊗ h) ⊗ γ ↦ b ⊗ hγ, on `vt` indices.
    pub g: Map1,
    pub report: CheckReport,
}

impl VerticalData {
    pub fn ver_v(&self, w: &FreeVector) -> FreeVector {
        w.map_linear(|i| (self.ver)(i))
    }

    pub fn g_v(&self, v: &FreeVector) -> FreeVector {
        v.map_linear(|i| (self.g)(i))
    }

    /// x · (a ⊗ κ) = xa ⊗ κ.
    pub fn act(&self, x: &FreeVector, v: &FreeVector) -> FreeVector {
        let alg = self.cf.fodc.algebra.clone();
        x.bilinear(v, |y, t| vt(&alg.mul_idx(y, t.idx(0)), &basis(t.idx(1))))
    }

    /// (a ⊗ κ) ↦ a₀ ⊗ κ₀ ⊗ a₁κ₁.
    pub fn coact(&self, v: &FreeVector) -> FreeVector {
        let cp = &self.cf.crossed;
        let rc = self.cf.h_calc.right_coaction.as_ref().expect("checked when built");
        v.map_linear(|t| {
            let (a, k) = (t.idx(0), t.idx(1));
            (cp.comodule.coaction)(a).bilinear(&(rc.forms)(k), |p, q| {
                let ((a0, a1), (k0, k1)) = (p.split2(), q.split2());
                basis(&vt_index(a0, k0)).tensor(&cp.hopf.algebra.mul_idx(a1, k1))
            })
        })
    }

    /// The (B #_σ H) ⊗ ^{coH}Ω¹(H) elements tested: basis elements of A
    /// on the window against the coinvariant basis.
    pub fn test_elements(&self, window: i64) -> Vec<FreeVector> {
        let kappas = self.coinv.basis();
        self.cf
            .fodc
            .algebra
            .elements(window)
            .iter()
            .flat_map(|a| kappas.iter().map(move |k| vt(&basis(a), k)))
            .collect()
    }
}

pub fn vertical_map(cf: &CrossedFodc, window: i64) -> Result<VerticalData, QpbError> {
    let hopf = cf.crossed.hopf.clone();
    let lc = left_coaction(&cf.h_calc)?.clone();
    right_coaction(&cf.h_calc)?;
    let coinv = coinvariant_forms(&cf.h_calc, &hopf, window)?;
    let p: Map1 = {
        let (h_calc, hopf) = (cf.h_calc.clone(), hopf.clone());
        map1(move |w| {
            let (b, g) = (w.idx(0), w.idx(1));
            let split = (lc.forms)(g).map_factor(0, 2, |x| hopf.delta_idx(x));
            split.map_terms(|t| {
                vt(&basis(&crossed_index(b, t[0])), &h_calc.left_act(&hopf.s(&basis(t[1])), &basis(t[2])))
            })
        })
    };
    let ver_map: Map1 = {
        let p = p.clone();
        map1(move |w| if w.tag() == "ver" { p(w) } else { FreeVector::zero() })
    };
    let g: Map1 = {
        let h_calc = cf.h_calc.clone();
        map1(move |t| {
            let (b, h) = t.idx(0).split2();
            ver(&basis(b), &(h_calc.left)(h, t.idx(1)))
        })
    };
    let mut vd = VerticalData { cf: cf.clone(), coinv, ver: ver_map, p, g, report: CheckReport::new() };

    let f = &cf.fodc;
    let scope = f.scope(window);
    let pw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let pscope = f.scope(pw);
    let ver_forms: Vec<BasisIndex> = f.form_elements(window).into_iter().filter(|w| w.tag() == "ver").collect();
    let tests = vd.test_elements(window);
    let mut report = CheckReport::new();
    report.check("g-after-p", scope, ver_forms.iter(), |w| mismatch(w, &vd.g_v(&(vd.p)(w)), &basis(w)));
    report.check("p-after-g", scope, tests.iter(), |v| mismatch(v, &vd.ver_v(&vd.g_v(v)), v));
    let (xs, ws) = (f.algebra.elements(pw), f.form_elements(pw));
    report.check("ver-left-linear", pscope, pairs(&xs, &ws), |(x, w)| {
        mismatch(format!("{x}·{w}"), &vd.ver_v(&(f.left)(x, w)), &vd.act(&basis(x), &(vd.ver)(w)))
    });
    let rc = right_coaction(f)?;
    report.check("ver-colinear", scope, f.form_elements(window).iter(), |w| {
        let lhs = vd.coact(&(vd.ver)(w));
        let rhs = (rc.forms)(w).map_factor(0, 1, |x| (vd.ver)(x));
        mismatch(w, &lhs, &rhs)
    });
    vd.report = report;
    Ok(vd)
}

/// Degree-n data for the higher exactness checks: the graded calculi on
/// A and on H.
pub struct HigherAtiyah<'a> {
    pub total: &'a GradedDc,
    pub hopf_dc: &'a GradedDc,
}

/// Exactness of 0 → Ω¹(B) ⊗ H → Ω¹(A) → A ⊗ ^{coH}Ω¹(H) → 0, and of its
/// degree-n analogues ver^{0,n} = pⁿ ∘ πₙ for 1 < n ≤ max_degree.
pub fn check_atiyah_exact(
    vd: &VerticalData,
    higher: Option<HigherAtiyah<'_>>,
    max_degree: usize,
    window: i64,
) -> CheckReport {
    let f = &vd.cf.fodc;
    let scope = f.scope(window);
    let forms = f.form_elements(window);
    let mut r = CheckReport::new();
    let horizontal: Vec<&BasisIndex> = forms.iter().filter(|w| w.tag() == "hor").collect();
    let kernel = LinearSystem::from_images(&forms, |w| (vd.ver)(w)).kernel();
    let stray = kernel.basis().find(|v| v.indices().any(|i| i.tag() != "hor"));
    let ok = horizontal.iter().all(|w| (vd.ver)(w).is_zero()) && stray.is_none() && kernel.dim() == horizontal.len();
    r.record(
        "atiyah-kernel",
        scope,
        ok,
        Some(match stray {
            Some(v) => format!("{v} is in the kernel but not horizontal"),
            None => format!("kernel dimension {} against {} horizontal forms", kernel.dim(), horizontal.len()),
        }),
        Some(format!("dim ker(ver) = {}", kernel.dim())),
    );
    let tests = vd.test_elements(window);
    r.check("atiyah-surjective", scope, tests.iter(), |v| mismatch(v, &vd.ver_v(&vd.g_v(v)), v));

    let Some(h) = higher else { return r };
    let hopf = &vd.cf.crossed.hopf;
    let Some(lam) = h.hopf_dc.left_coaction.clone() else {
        r.record("atiyah-higher", scope, false, Some("no left coaction on the higher forms of H".into()), None);
        return r;
    };
    for n in 2..=max_degree.min(h.total.max_degree()) {
        let hdc = h.hopf_dc;
        let p_n = |x: &BasisIndex| -> FreeVector {
            let (i, j, b, g) = hf_split(x);
            if i != 0 || j != n {
                return FreeVector::zero();
            }
            lam(n, g).map_factor(0, 2, |y| hopf.delta_idx(y)).map_terms(|t| {
                let kappa = hdc.wedge_v(0, &hopf.s(&basis(t[1])), n, &basis(t[2]));
                vt(&basis(&crossed_index(b, t[0])), &kappa)
            })
        };
        let elements = h.total.elements(n, window);
        let sys = LinearSystem::from_images(&elements, p_n);
        let higher_scope = h.total.scope(window);
        let ker = sys.kernel();
        let lower = elements.iter().filter(|x| hf_split(x).0 >= 1).count();
        let stray = ker.basis().find(|v| v.indices().any(|x| hf_split(x).0 == 0));
        r.record(
            &format!("atiyah-kernel-{n}"),
            higher_scope,
            stray.is_none() && ker.dim() == lower,
            Some(match stray {
                Some(v) => format!("{v} is in the kernel of ver^(0,{n})"),
                None => format!("kernel dimension {} against {lower}", ker.dim()),
            }),
            Some(format!("dim ker = {}", ker.dim())),
        );
        let hforms = hdc.elements(n, window);
        let one = hopf.one();
        let coinv_n = LinearSystem::from_images(&hforms, |g| lam(n, g).sub(&one.tensor(&basis(g)))).kernel();
        // gⁿ((b ⊗ h) ⊗ κ) = b ⊗ h·κ
        let g_n = |v: &FreeVector| {
            v.map_linear(|t| {
                let (b, x) = t.idx(0).split2();
                (hdc.wedge)(0, x, n, t.idx(1)).map_linear(|k| basis(&hf_index(0, n, b, k)))
            })
        };
        let kappas: Vec<FreeVector> = coinv_n.basis().cloned().collect();
        let els = vd.cf.fodc.algebra.elements(window);
        let tests: Vec<FreeVector> = els.iter().flat_map(|a| kappas.iter().map(move |k| vt(&basis(a), k))).collect();
        r.check(&format!("atiyah-surjective-{n}"), higher_scope, tests.iter(), |v| {
            let back = g_n(v).map_linear(p_n);
            mismatch(v, &back, v)
        });
    }
    r
}

/// s(a) = a₀ j⁻¹(a₁) ⊗ j(a₂) in A ⊗ A: unital, m∘s = Id, left factor in B.
pub fn check_strong_section(cc: &CleftCrossed, cleft: &crate::crossed::CleftData, window: i64) -> CheckReport {
    let a = &cleft.total.algebra;
    let hopf = &cleft.total.hopf;
    let (j, jinv) = (cleft.cleaving.clone(), cc.cleaving_inv.clone());
    let s = |x: &BasisIndex| -> FreeVector {
        cleft
            .total
            .rho_idx(x)
            .map_factor(1, 2, |y| hopf.delta_idx(y))
            .map_terms(|t| a.mul(&basis(t[0]), &jinv(t[1])).tensor(&j(t[2])))
    };
    let scope = a.scope(window);
    let els = a.elements(window);
    let mut r = CheckReport::new();
    let unit = a.one();
    r.check("section-unit", scope, unit.indices().take(1), |i| mismatch(i, &s(i), &unit.tensor(&unit)));
    r.check("section-splits", scope, els.iter(), |x| {
        let m = s(x).map_terms(|t| a.mul_idx(t[0], t[1]));
        mismatch(x, &m, &basis(x))
    });
    r.check("section-base", scope, els.iter(), |x| {
        let mut by_h: BTreeMap<BasisIndex, FreeVector> = BTreeMap::new();
        for (t, c) in cleft.total.rho_idx(x).map_factor(1, 2, |y| hopf.delta_idx(y)).iter() {
            let (a0, a1, a2) = t.split3();
            by_h.entry(a2.clone()).or_default().add_scaled(&a.mul(&basis(a0), &jinv(a1)), c);
        }
        by_h.iter()
            .find(|(_, b)| (cleft.retraction)(b).is_none())
            .map(|(h, b)| format!("a₀j⁻¹(a₁) = {b} at a₂ = {h}, a = {x}"))
    });
    r
}

#[cfg(test)]
mod tests;
