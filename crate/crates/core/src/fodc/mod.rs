//! First-order differential calculi: the generic container and checker,
//! calculi built from ideals, universal calculi, the Laurent calculi, and
//! σ-twisted module calculi.

mod laurent;
mod twisted;
mod universal;
mod woronowicz;

use crate::hopf::{AlgebraPresentation, HopfData};
use crate::linalg::{Basis, BasisIndex, FreeVector, LinearSystem, Map1, Map2};
use crate::report::{mismatch, pairs, triple_window, triples, CheckReport, Scope};

pub use laurent::{build_kahler_laurent, build_laurent_q_calculus, kahler_index, q_integer, qform_index};
pub use twisted::{check_sigma_twisted_module_calculus, forced_zero_by_cocycle, TwistedCalculus};
pub use universal::{universal_d, universal_fodc, universal_quotient, zero_calculus, zero_hopf_calculus};
pub use woronowicz::{left_ideal_closure, wor_index, woronowicz_from_ideal, IdealCalculusSpec, Woronowicz};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum FodcError {
    #[error("generator {0} is not in the augmentation ideal")]
    NotInAugmentation(String),
    #[error("form {0} is not in A dA")]
    NotSurjective(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("relation {0} is not a 1-form of the universal calculus")]
    NotUniversalForm(String),
    #[error("action of {h} is not well defined: {first} and {second} present the same form")]
    NotWellDefined { h: String, first: String, second: String },
    #[error("{0} requires a finite basis")]
    NotFinite(&'static str),
}

/// A coaction on an algebra together with a compatible coaction on its
/// 1-forms. Right coactions use pair indices (x, h), left ones (h, x).
#[derive(Clone)]
pub struct FormCoaction {
    pub hopf: HopfData,
    pub algebra: Map1,
    pub forms: Map1,
}

#[derive(Clone)]
pub struct Fodc {
    pub name: String,
    pub algebra: AlgebraPresentation,
    pub forms: Basis,
    /// a·ω on basis indices.
    pub left: Map2,
    /// ω·a on basis indices.
    pub right: Map2,
    pub d: Map1,
    pub right_coaction: Option<FormCoaction>,
    pub left_coaction: Option<FormCoaction>,
    /// For each form basis element, a combination of pairs (a, b) with
    /// Σ c·a d(b) equal to it.
    pub presentation: Map1,
}

impl Fodc {
    pub fn left_act(&self, a: &FreeVector, w: &FreeVector) -> FreeVector {
        a.bilinear(w, |x, y| (self.left)(x, y))
    }

    pub fn right_act(&self, w: &FreeVector, a: &FreeVector) -> FreeVector {
        w.bilinear(a, |x, y| (self.right)(x, y))
    }

    pub fn diff(&self, a: &FreeVector) -> FreeVector {
        a.map_linear(|i| (self.d)(i))
    }

    /// Σ c·a d(b) for a combination of pairs (a, b).
    pub fn eval_pairs(&self, v: &FreeVector) -> FreeVector {
        v.map_linear(|p| {
            let (a, b) = p.split2();
            (self.d)(b).map_linear(|w| (self.left)(a, w))
        })
    }

    pub fn is_finite(&self) -> bool {
        self.algebra.is_finite() && self.forms.is_finite()
    }

    pub fn form_elements(&self, window: i64) -> Vec<BasisIndex> {
        self.forms.enumerate(window)
    }

    pub fn scope(&self, window: i64) -> Scope {
        self.algebra.scope(window).join(Scope::for_basis(self.forms.is_finite(), window))
    }

    pub fn bicovariant(&self) -> bool {
        self.left_coaction.is_some() && self.right_coaction.is_some()
    }
}

/// Solves for a presentation Σ a d(b) of every form of a finite calculus.
pub fn solve_presentations(
    algebra: &AlgebraPresentation,
    forms: &[BasisIndex],
    left: &Map2,
    d: &Map1,
) -> Result<std::collections::BTreeMap<BasisIndex, FreeVector>, FodcError> {
    let els = algebra.basis.elements();
    let domain: Vec<BasisIndex> = els.iter().flat_map(|a| els.iter().map(move |b| BasisIndex::pair(a, b))).collect();
    let sys = LinearSystem::from_images(&domain, |p| {
        let (a, b) = p.split2();
        d(b).map_linear(|w| left(a, w))
    });
    forms
        .iter()
        .map(|w| {
            sys.solve(&FreeVector::basis(w.clone()))
                .map(|x| (w.clone(), x))
                .ok_or_else(|| FodcError::NotSurjective(w.to_string()))
        })
        .collect()
}

fn basis(i: &BasisIndex) -> FreeVector {
    FreeVector::basis(i.clone())
}

/// Bimodule laws, Leibniz rule, surjectivity witnesses and, when present,
/// covariance of d and of both actions under each coaction.
pub fn check_fodc(f: &Fodc, window: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let scope = f.scope(window);
    let tw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let tscope = f.scope(tw);
    let alg = &f.algebra;
    let (els, forms) = (alg.elements(window), f.form_elements(window));
    let (els3, forms3) = (alg.elements(tw), f.form_elements(tw));
    let aw = pairs(&els, &forms);

    report.check("bimodule-unit", scope, forms.iter(), |w| {
        let one = alg.one();
        mismatch(format!("1·{w}"), &f.left_act(&one, &basis(w)), &basis(w))
            .or_else(|| mismatch(format!("{w}·1"), &f.right_act(&basis(w), &one), &basis(w)))
    });
    report.check("bimodule-left-assoc", tscope, triples(&els3, &els3, &forms3), |(a, b, w)| {
        let lhs = f.left_act(&basis(a), &(f.left)(b, w));
        let rhs = f.left_act(&alg.mul_idx(a, b), &basis(w));
        mismatch(format!("({a}, {b}, {w})"), &lhs, &rhs)
    });
    report.check("bimodule-right-assoc", tscope, triples(&forms3, &els3, &els3), |(w, a, b)| {
        let lhs = f.right_act(&(f.right)(w, a), &basis(b));
        let rhs = f.right_act(&basis(w), &alg.mul_idx(a, b));
        mismatch(format!("({w}, {a}, {b})"), &lhs, &rhs)
    });
    report.check("bimodule-compat", tscope, triples(&els3, &forms3, &els3), |(a, w, b)| {
        let lhs = f.right_act(&(f.left)(a, w), &basis(b));
        let rhs = f.left_act(&basis(a), &(f.right)(w, b));
        mismatch(format!("({a}, {w}, {b})"), &lhs, &rhs)
    });
    report.check("leibniz", scope, pairs(&els, &els), |(a, b)| {
        let lhs = f.diff(&alg.mul_idx(a, b));
        let rhs = f.right_act(&(f.d)(a), &basis(b)).add(&f.left_act(&basis(a), &(f.d)(b)));
        mismatch(format!("({a}, {b})"), &lhs, &rhs)
    });
    report.check("surjectivity", scope, forms.iter(), |w| {
        let p = (f.presentation)(w);
        mismatch(format!("{w} from {p}"), &f.eval_pairs(&p), &basis(w))
    });

    if let Some(rc) = &f.right_coaction {
        let h = &rc.hopf;
        let scope = scope.join(h.algebra.scope(window));
        let mul_wh = |x: &FreeVector, y: &FreeVector, form_left: bool| {
            x.bilinear(y, |p, q| {
                let (u, g) = p.split2();
                let (v, k) = q.split2();
                let act = if form_left { (f.right)(u, v) } else { (f.left)(u, v) };
                act.tensor(&h.algebra.mul_idx(g, k))
            })
        };
        report.check("d-right-colinear", scope, els.iter(), |a| {
            let lhs = (f.d)(a).map_linear(|w| (rc.forms)(w));
            let rhs = (rc.algebra)(a).map_factor(0, 1, |x| (f.d)(x));
            mismatch(a, &lhs, &rhs)
        });
        report.check("right-covariant-actions", scope, aw.iter(), |(a, w)| {
            let left = (f.left)(a, w).map_linear(|x| (rc.forms)(x));
            let left_rhs = mul_wh(&(rc.algebra)(a), &(rc.forms)(w), false);
            let right = (f.right)(w, a).map_linear(|x| (rc.forms)(x));
            let right_rhs = mul_wh(&(rc.forms)(w), &(rc.algebra)(a), true);
            mismatch(format!("{a}·{w}"), &left, &left_rhs).or_else(|| mismatch(format!("{w}·{a}"), &right, &right_rhs))
        });
        report.check("right-coaction-comodule", scope, forms.iter(), |w| {
            let r = (rc.forms)(w);
            let lhs = r.map_factor(0, 2, |x| (rc.forms)(x));
            let rhs = r.map_factor(1, 2, |g| h.delta_idx(g));
            let back = r.map_terms(|t| basis(t[0]).scale(&h.eps_idx(t[1])));
            mismatch(w, &lhs, &rhs).or_else(|| mismatch(format!("counit at {w}"), &back, &basis(w)))
        });
    }
    if let Some(lc) = &f.left_coaction {
        let h = &lc.hopf;
        let scope = scope.join(h.algebra.scope(window));
        let mul_hw = |x: &FreeVector, y: &FreeVector, form_left: bool| {
            x.bilinear(y, |p, q| {
                let (g, u) = p.split2();
                let (k, v) = q.split2();
                let act = if form_left { (f.right)(u, v) } else { (f.left)(u, v) };
                h.algebra.mul_idx(g, k).tensor(&act)
            })
        };
        report.check("d-left-colinear", scope, els.iter(), |a| {
            let lhs = (f.d)(a).map_linear(|w| (lc.forms)(w));
            let rhs = (lc.algebra)(a).map_factor(1, 1, |x| (f.d)(x));
            mismatch(a, &lhs, &rhs)
        });
        report.check("left-covariant-actions", scope, aw.iter(), |(a, w)| {
            let left = (f.left)(a, w).map_linear(|x| (lc.forms)(x));
            let left_rhs = mul_hw(&(lc.algebra)(a), &(lc.forms)(w), false);
            let right = (f.right)(w, a).map_linear(|x| (lc.forms)(x));
            let right_rhs = mul_hw(&(lc.forms)(w), &(lc.algebra)(a), true);
            mismatch(format!("{a}·{w}"), &left, &left_rhs).or_else(|| mismatch(format!("{w}·{a}"), &right, &right_rhs))
        });
        report.check("left-coaction-comodule", scope, forms.iter(), |w| {
            let l = (lc.forms)(w);
            let lhs = l.map_factor(1, 2, |x| (lc.forms)(x));
            let rhs = l.map_factor(0, 2, |g| h.delta_idx(g));
            let back = l.map_terms(|t| basis(t[1]).scale(&h.eps_idx(t[0])));
            mismatch(w, &lhs, &rhs).or_else(|| mismatch(format!("counit at {w}"), &back, &basis(w)))
        });
        if let Some(rc) = &f.right_coaction {
            report.check("bicomodule", scope, forms.iter(), |w| {
                let lhs = (rc.forms)(w).map_factor(0, 2, |x| (lc.forms)(x));
                let rhs = (lc.forms)(w).map_factor(1, 2, |x| (rc.forms)(x));
                mismatch(w, &lhs, &rhs)
            });
        }
    }
    report
}
