use std::collections::BTreeSet;
use std::sync::Arc;

use super::{first_hypothesis_failure, hor_index, ver_index, CrossedCalcError, CrossedFodc};
use crate::crossed::{crossed_index, CrossedProduct, Measure};
use crate::fodc::{Fodc, TwistedCalculus};
use crate::hopf::AlgebraPresentation;
use crate::linalg::{Basis, BasisIndex, FreeVector, LinearSystem};
use crate::report::{mismatch, pairs, triple_window, triples, CheckReport, Scope};

pub type Graded1 = Arc<dyn Fn(usize, &BasisIndex) -> FreeVector + Send + Sync>;
pub type Graded2 = Arc<dyn Fn(usize, &BasisIndex, usize, &BasisIndex) -> FreeVector + Send + Sync>;
/// (h, degree, ω) ↦ h·ω.
pub type GradedAction = Arc<dyn Fn(&BasisIndex, usize, &BasisIndex) -> FreeVector + Send + Sync>;

/// A differential graded algebra Ω⁰ ⊕ Ω¹ ⊕ … ⊕ Ωᴺ with Ω⁰ the algebra.
#[derive(Clone)]
pub struct GradedDc {
    pub name: String,
    pub algebra: AlgebraPresentation,
    /// components[n] is a basis of Ωⁿ; components[0] is the algebra basis.
    pub components: Vec<Basis>,
    pub wedge: Graded2,
    pub d: Graded1,
    /// γ ↦ γ₋₁ ⊗ γ₀ (pair indices), the H ⊗ Ωⁿ component of Ω(Δ).
    pub left_coaction: Option<Graded1>,
    /// γ ↦ γ₀ ⊗ γ₁ (pair indices), the Ωⁿ ⊗ H component.
    pub right_coaction: Option<Graded1>,
    /// Graded measure of H on a calculus over B.
    pub action: Option<GradedAction>,
}

impl GradedDc {
    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn elements(&self, n: usize, window: i64) -> Vec<BasisIndex> {
        self.components.get(n).map(|b| b.enumerate(window)).unwrap_or_default()
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(Basis::is_finite)
    }

    pub fn scope(&self, window: i64) -> Scope {
        Scope::for_basis(self.is_finite(), window)
    }

    pub fn wedge_v(&self, i: usize, x: &FreeVector, j: usize, y: &FreeVector) -> FreeVector {
        if i + j > self.max_degree() {
            return FreeVector::zero();
        }
        x.bilinear(y, |a, b| (self.wedge)(i, a, j, b))
    }

    pub fn diff(&self, n: usize, x: &FreeVector) -> FreeVector {
        if n >= self.max_degree() {
            return FreeVector::zero();
        }
        x.map_linear(|a| (self.d)(n, a))
    }
}

fn basis(i: &BasisIndex) -> FreeVector {
    FreeVector::basis(i.clone())
}

/// The calculus with Ω^{≥2} = 0 and d = 0 on 1-forms.
pub fn first_order_dc(f: &Fodc) -> GradedDc {
    let wedge = {
        let f = f.clone();
        Arc::new(move |i: usize, a: &BasisIndex, j: usize, b: &BasisIndex| match (i, j) {
            (0, 0) => f.algebra.mul_idx(a, b),
            (0, 1) => (f.left)(a, b),
            (1, 0) => (f.right)(a, b),
            _ => FreeVector::zero(),
        }) as Graded2
    };
    let d = {
        let f = f.clone();
        Arc::new(move |n: usize, a: &BasisIndex| if n == 0 { (f.d)(a) } else { FreeVector::zero() }) as Graded1
    };
    let graded = |c: &Option<crate::fodc::FormCoaction>| {
        c.clone().map(|c| {
            Arc::new(move |n: usize, a: &BasisIndex| match n {
                0 => (c.algebra)(a),
                1 => (c.forms)(a),
                _ => FreeVector::zero(),
            }) as Graded1
        })
    };
    GradedDc {
        name: format!("{} truncated at degree 2", f.name),
        algebra: f.algebra.clone(),
        components: vec![f.algebra.basis.clone(), f.forms.clone(), Basis::empty()],
        wedge,
        d,
        left_coaction: graded(&f.left_coaction),
        right_coaction: graded(&f.right_coaction),
        action: None,
    }
}

/// First-order truncation of a calculus on B carrying the measure in degree 0
/// and the derived action on 1-forms.
pub fn twisted_dc(f: &Fodc, measure: &Measure, twisted: &TwistedCalculus) -> GradedDc {
    let mut dc = first_order_dc(f);
    let (m, t) = (measure.act.clone(), twisted.action.clone());
    dc.action = Some(Arc::new(move |h, n, w| match n {
        0 => m(h, w),
        1 => t(h, w),
        _ => FreeVector::zero(),
    }));
    dc
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("not truncatable: {witness}")]
pub struct NotTruncatable {
    pub witness: String,
}

/// Truncation at degree 2 of a bicovariant calculus on H, provided Ω(Δ)
/// stays multiplicative: the Ω¹ ⊗ Ω¹ part of Ω(Δ)(γ)Ω(Δ)(γ'), that is
/// γ₀γ'₋₁ ⊗ γ₁γ'₀ − γ₋₁γ'₀ ⊗ γ₀γ'₁, must vanish since γ∧γ' = 0.
pub fn truncate_dc_degree2(f: &Fodc, window: i64) -> Result<(GradedDc, CheckReport), NotTruncatable> {
    let (Some(lc), Some(rc)) = (&f.left_coaction, &f.right_coaction) else {
        return Err(NotTruncatable { witness: format!("{} is not bicovariant", f.name) });
    };
    let forms = f.form_elements(window);
    let scope = f.scope(window);
    let mut report = CheckReport::new();
    let mut witness = None;
    report.check("cross-terms", scope, pairs(&forms, &forms), |(g, g2)| {
        let (rg, lg) = ((rc.forms)(g), (lc.forms)(g));
        let (rg2, lg2) = ((rc.forms)(g2), (lc.forms)(g2));
        let mut v = FreeVector::zero();
        for (p, c) in rg.iter() {
            let (g0, g1) = p.split2();
            for (q, e) in lg2.iter() {
                let (k, g20) = q.split2();
                let x = (f.right)(g0, k);
                let y = (f.left)(g1, g20);
                v.add_scaled(&x.tensor(&y), &c.mul(e));
            }
        }
        for (p, c) in lg.iter() {
            let (k, g0) = p.split2();
            for (q, e) in rg2.iter() {
                let (g20, g21) = q.split2();
                let x = (f.left)(k, g20);
                let y = (f.right)(g0, g21);
                v.add_scaled(&x.tensor(&y), &c.mul(e).neg());
            }
        }
        let w = (!v.is_zero()).then(|| format!("at ({g}, {g2}): {v}"));
        witness = w.clone();
        w
    });
    match witness {
        Some(w) => Err(NotTruncatable { witness: w }),
        None => Ok((first_order_dc(f), report)),
    }
}

/// Index of ω ⊗ γ in Ωᵖ(B) ⊗ Ω^q(H). Degrees (0,0), (1,0) and (0,1) reuse
/// the indices of the crossed product and of its first-order calculus.
pub fn hf_index(p: usize, q: usize, omega: &BasisIndex, gamma: &BasisIndex) -> BasisIndex {
    match (p, q) {
        (0, 0) => crossed_index(omega, gamma),
        (1, 0) => hor_index(omega, gamma),
        (0, 1) => ver_index(omega, gamma),
        _ => BasisIndex::wrap("hf", &[BasisIndex::new("deg", &[p as i64, q as i64]), omega.clone(), gamma.clone()]),
    }
}

/// Inverse of [`hf_index`]: (p, q, ω, γ).
pub fn hf_split(i: &BasisIndex) -> (usize, usize, &BasisIndex, &BasisIndex) {
    match i.tag() {
        "hor" => (1, 0, i.idx(0), i.idx(1)),
        "ver" => (0, 1, i.idx(0), i.idx(1)),
        "hf" => {
            let deg = i.idx(0);
            (deg.int(0) as usize, deg.int(1) as usize, i.idx(1), i.idx(2))
        }
        _ => {
            let (b, h) = i.split2();
            (0, 0, b, h)
        }
    }
}

fn hf(p: usize, q: usize, x: &FreeVector, y: &FreeVector) -> FreeVector {
    x.bilinear(y, |a, b| basis(&hf_index(p, q, a, b)))
}

fn sign(odd: bool) -> crate::scalars::CycScalar {
    crate::scalars::CycScalar::from_int(if odd { -1 } else { 1 })
}

/// The graded crossed product Ωⁿ(B #_σ H) = ⊕ Ω^{n−i}(B) ⊗ Ωⁱ(H) and the
/// hypothesis checks run on its inputs.
#[derive(Clone)]
pub struct HigherForms {
    pub dc: GradedDc,
    pub hypotheses: CheckReport,
}

fn graded_hypotheses(
    cp: &CrossedProduct,
    b_dc: &GradedDc,
    h_dc: &GradedDc,
    window: i64,
) -> Result<CheckReport, CrossedCalcError> {
    let missing = |what: &str| CrossedCalcError::Hypothesis { check: what.to_string(), witness: "not supplied".into() };
    let act = b_dc.action.as_ref().ok_or_else(|| missing("graded-action"))?;
    let lam = h_dc.left_coaction.as_ref().ok_or_else(|| missing("left-coaction"))?;
    let rho = h_dc.right_coaction.as_ref().ok_or_else(|| missing("right-coaction"))?;
    let (hopf, s) = (&cp.hopf, &cp.cocycle);
    let (bmax, hmax) = (b_dc.max_degree(), h_dc.max_degree());
    let scope = b_dc.scope(window).join(h_dc.scope(window));
    let tw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let tscope = b_dc.scope(tw).join(h_dc.scope(tw));
    let hs = hopf.algebra.elements(window);
    let hs3 = hopf.algebra.elements(tw);
    let act_v = |h: &FreeVector, n: usize, w: &FreeVector| h.bilinear(w, |x, y| act(x, n, y));
    let bforms: Vec<(usize, BasisIndex)> =
        (0..=bmax).flat_map(|n| b_dc.elements(n, window).into_iter().map(move |w| (n, w))).collect();
    let bforms3: Vec<(usize, BasisIndex)> =
        (0..=bmax).flat_map(|n| b_dc.elements(n, tw).into_iter().map(move |w| (n, w))).collect();
    let hforms: Vec<(usize, BasisIndex)> =
        (0..=hmax).flat_map(|n| h_dc.elements(n, window).into_iter().map(move |w| (n, w))).collect();
    let hforms3: Vec<(usize, BasisIndex)> =
        (0..=hmax).flat_map(|n| h_dc.elements(n, tw).into_iter().map(move |w| (n, w))).collect();

    let mut r = CheckReport::new();
    r.check("action-unit", scope, bforms.iter(), |(n, w)| mismatch(w, &act_v(&hopf.one(), *n, &basis(w)), &basis(w)));
    r.check(
        "action-wedge",
        tscope,
        hs3.iter().flat_map(|h| pairs(&bforms3, &bforms3).into_iter().map(move |p| (h, p))),
        |(h, ((i, x), (j, y)))| {
            if i + j > bmax {
                return None;
            }
            let lhs = act_v(&basis(h), i + j, &(b_dc.wedge)(*i, x, *j, y));
            let rhs = hopf.delta_idx(h).map_terms(|t| b_dc.wedge_v(*i, &act(t[0], *i, x), *j, &act(t[1], *j, y)));
            mismatch(format!("({h}, {x}, {y})"), &lhs, &rhs)
        },
    );
    r.check(
        "action-twisted",
        tscope,
        hs3.iter().flat_map(|h| pairs(&hs3, &bforms3).into_iter().map(move |p| (h, p))),
        |(h, (g, (n, w)))| {
            let lhs = act_v(&basis(h), *n, &act(g, *n, w));
            let (dh, dg) = (hopf.delta2_idx(h), hopf.delta2_idx(g));
            let mut rhs = FreeVector::zero();
            for (p, c) in dh.iter() {
                let (x1, x2, x3) = p.split3();
                for (q, e) in dg.iter() {
                    let (y1, y2, y3) = q.split3();
                    let mid = act_v(&hopf.algebra.mul_idx(x2, y2), *n, &basis(w));
                    let left = b_dc.wedge_v(0, &(s.sigma)(x1, y1), *n, &mid);
                    rhs.add_scaled(&b_dc.wedge_v(*n, &left, 0, &(s.sigma_inv)(x3, y3)), &c.mul(e));
                }
            }
            mismatch(format!("({h}, {g}, {w})"), &lhs, &rhs)
        },
    );
    r.check("dsigma", scope, pairs(&hs, &hs), |(h, g)| {
        let v = b_dc.diff(0, &(s.sigma)(h, g));
        (!v.is_zero()).then(|| format!("d(σ({h}⊗{g})) = {v}"))
    });
    r.check("action-d", scope, pairs(&hs, &bforms), |(h, (n, w))| {
        let lhs = act_v(&basis(h), n + 1, &b_dc.diff(*n, &basis(w)));
        let rhs = b_dc.diff(*n, &act(h, *n, w));
        mismatch(format!("({h}, {w})"), &lhs, &rhs)
    });
    for (name, coaction, left_side) in
        [("delta-differentiable-left", lam, true), ("delta-differentiable-right", rho, false)]
    {
        r.check(name, scope, hforms.iter(), |(n, g)| {
            let lhs = h_dc.diff(*n, &basis(g)).map_linear(|x| coaction(n + 1, x));
            let rhs = if left_side {
                coaction(*n, g).map_factor(1, 1, |x| h_dc.diff(*n, &basis(x)))
            } else {
                coaction(*n, g).map_factor(0, 1, |x| h_dc.diff(*n, &basis(x)))
            };
            mismatch(g, &lhs, &rhs)
        });
    }
    r.check("left-coaction-multiplicative", tscope, pairs(&hforms3, &hforms3), |((i, x), (j, y))| {
        if i + j > hmax {
            return None;
        }
        let lhs = (h_dc.wedge)(*i, x, *j, y).map_linear(|z| lam(i + j, z));
        let rhs = lam(*i, x).bilinear(&lam(*j, y), |p, q| {
            let (a, u) = p.split2();
            let (b, v) = q.split2();
            hopf.algebra.mul_idx(a, b).tensor(&(h_dc.wedge)(*i, u, *j, v))
        });
        mismatch(format!("({x}, {y})"), &lhs, &rhs)
    });
    Ok(r)
}

/// Higher forms on B #_σ H with
/// (ω⊗γ)∧(ω'⊗γ') = (−1)^{|γ||ω'|} ω∧(γ₋₂·ω')σ(γ₋₁⊗γ'₋₁) ⊗ γ₀∧γ'₀ and
/// d(ω⊗γ) = d_B ω ⊗ γ + (−1)^{|ω|} ω ⊗ d_H γ.
pub fn build_higher_forms(
    cp: &CrossedProduct,
    b_dc: &GradedDc,
    h_dc: &GradedDc,
    window: i64,
) -> Result<HigherForms, CrossedCalcError> {
    let hypotheses = graded_hypotheses(cp, b_dc, h_dc, window)?;
    first_hypothesis_failure(&hypotheses)?;
    let (bmax, hmax) = (b_dc.max_degree(), h_dc.max_degree());
    let components: Vec<Basis> = (0..=bmax + hmax)
        .map(|n| {
            let parts: Vec<Basis> = (0..=n)
                .filter(|q| *q <= hmax && n - q <= bmax)
                .map(|q| {
                    let p = n - q;
                    Basis::product(&b_dc.components[p], &h_dc.components[q]).map(move |i| {
                        let (w, g) = i.split2();
                        hf_index(p, q, w, g)
                    })
                })
                .collect();
            Basis::union(&parts)
        })
        .collect();
    let wedge: Graded2 = {
        let (b, h, hopf, s) = (b_dc.clone(), h_dc.clone(), cp.hopf.clone(), cp.cocycle.clone());
        let act = b.action.clone().expect("checked");
        let lam = h.left_coaction.clone().expect("checked");
        Arc::new(move |_, x, _, y| {
            let (i, j, w, g) = hf_split(x);
            let (k, l, w2, g2) = hf_split(y);
            if i + k > bmax || j + l > hmax {
                return FreeVector::zero();
            }
            let lam2 = lam(j, g).map_factor(0, 2, |z| hopf.delta_idx(z));
            let lam_other = lam(l, g2);
            let mut out = FreeVector::zero();
            for (t, c) in lam2.iter() {
                let (x1, x2, g0) = t.split3();
                let acted = act(x1, k, w2);
                for (u, e) in lam_other.iter() {
                    let (y1, g20) = u.split2();
                    let with_sigma = b.wedge_v(k, &acted, 0, &(s.sigma)(x2, y1));
                    let left = b.wedge_v(i, &basis(w), k, &with_sigma);
                    let right = (h.wedge)(j, g0, l, g20);
                    out.add_scaled(&hf(i + k, j + l, &left, &right), &c.mul(e));
                }
            }
            out.scale(&sign(j * k % 2 == 1))
        })
    };
    let d: Graded1 = {
        let (b, h) = (b_dc.clone(), h_dc.clone());
        Arc::new(move |_, x| {
            let (i, j, w, g) = hf_split(x);
            let horizontal = hf(i + 1, j, &b.diff(i, &basis(w)), &basis(g));
            let vertical = hf(i, j + 1, &basis(w), &h.diff(j, &basis(g))).scale(&sign(i % 2 == 1));
            horizontal.add(&vertical)
        })
    };
    let right_coaction: Graded1 = {
        let rho = h_dc.right_coaction.clone().expect("checked");
        Arc::new(move |_, x| {
            let (i, j, w, g) = hf_split(x);
            rho(j, g).map_terms(|t| basis(&BasisIndex::pair(&hf_index(i, j, w, t[0]), t[1])))
        })
    };
    let dc = GradedDc {
        name: format!("higher forms on {}", cp.algebra().name),
        algebra: cp.algebra().clone(),
        components,
        wedge,
        d,
        left_coaction: None,
        right_coaction: Some(right_coaction),
        action: None,
    };
    Ok(HigherForms { dc, hypotheses })
}

/// Unit, degree bookkeeping, d² = 0, graded Leibniz rule and associativity
/// on tested homogeneous elements.
pub fn check_graded_dc(dc: &GradedDc, window: i64) -> CheckReport {
    let n_max = dc.max_degree();
    let scope = dc.scope(window);
    let pw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let pscope = dc.scope(pw);
    let els: Vec<(usize, BasisIndex)> =
        (0..=n_max).flat_map(|n| dc.elements(n, window).into_iter().map(move |x| (n, x))).collect();
    let small: Vec<(usize, BasisIndex)> =
        (0..=n_max).flat_map(|n| dc.elements(n, pw).into_iter().map(move |x| (n, x))).collect();
    let members: Vec<BTreeSet<BasisIndex>> =
        (0..=n_max).map(|n| dc.elements(n, 2 * pw + 2).into_iter().collect()).collect();
    let stray = |n: usize, v: &FreeVector| -> Option<String> {
        let set = members.get(n);
        v.indices()
            .find(|i| set.is_none_or(|s| !s.contains(i)))
            .map(|i| format!("{i} is not a degree-{n} basis element"))
    };
    let one = dc.algebra.one();
    let mut r = CheckReport::new();
    r.check("wedge-unit", scope, els.iter(), |(n, x)| {
        mismatch(format!("1∧{x}"), &dc.wedge_v(0, &one, *n, &basis(x)), &basis(x))
            .or_else(|| mismatch(format!("{x}∧1"), &dc.wedge_v(*n, &basis(x), 0, &one), &basis(x)))
    });
    r.check("degree", pscope, pairs(&small, &small), |((i, x), (j, y))| {
        if i + j > n_max {
            return None;
        }
        stray(i + j, &(dc.wedge)(*i, x, *j, y)).map(|e| format!("{x}∧{y}: {e}"))
    });
    r.check("d-degree", scope, els.iter(), |(n, x)| {
        stray(n + 1, &dc.diff(*n, &basis(x))).map(|e| format!("d{x}: {e}"))
    });
    r.check("d-squared", scope, els.iter(), |(n, x)| {
        let v = dc.diff(n + 1, &dc.diff(*n, &basis(x)));
        (!v.is_zero()).then(|| format!("d²({x}) = {v}"))
    });
    r.check("graded-leibniz", pscope, pairs(&small, &small), |((i, x), (j, y))| {
        if i + j + 1 > n_max {
            return None;
        }
        let lhs = dc.diff(i + j, &(dc.wedge)(*i, x, *j, y));
        let rhs = dc
            .wedge_v(i + 1, &dc.diff(*i, &basis(x)), *j, &basis(y))
            .add(&dc.wedge_v(*i, &basis(x), j + 1, &dc.diff(*j, &basis(y))).scale(&sign(i % 2 == 1)));
        mismatch(format!("({x}, {y})"), &lhs, &rhs)
    });
    let triples = triples(&small, &small, &small);
    r.check("wedge-associativity", pscope, triples, |((i, x), (j, y), (k, z))| {
        if i + j + k > n_max {
            return None;
        }
        let lhs = dc.wedge_v(i + j, &(dc.wedge)(*i, x, *j, y), *k, &basis(z));
        let rhs = dc.wedge_v(*i, &basis(x), j + k, &(dc.wedge)(*j, y, *k, z));
        mismatch(format!("({x}, {y}, {z})"), &lhs, &rhs)
    });
    r
}

/// Degree ≤ 1 part of the higher forms against the first-order crossed
/// product calculus, map by map.
pub fn compare_with_first_order(higher: &GradedDc, cf: &CrossedFodc, window: i64) -> CheckReport {
    let f = &cf.fodc;
    let scope = f.scope(window);
    let pw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let pscope = f.scope(pw);
    let (els, forms) = (f.algebra.elements(pw), f.form_elements(pw));
    let mut r = CheckReport::new();
    let listed: Vec<BasisIndex> = higher.elements(1, window);
    r.record(
        "first-order-forms",
        scope,
        listed == f.form_elements(window),
        Some(format!("{} forms against {}", listed.len(), f.form_elements(window).len())),
        Some(format!("{} forms", listed.len())),
    );
    r.check("first-order-product", pscope, pairs(&els, &els), |(a, b)| {
        mismatch(format!("({a}, {b})"), &(higher.wedge)(0, a, 0, b), &f.algebra.mul_idx(a, b))
    });
    r.check("first-order-left", pscope, pairs(&els, &forms), |(a, w)| {
        mismatch(format!("{a}·{w}"), &(higher.wedge)(0, a, 1, w), &(f.left)(a, w))
    });
    r.check("first-order-right", pscope, pairs(&forms, &els), |(w, a)| {
        mismatch(format!("{w}·{a}"), &(higher.wedge)(1, w, 0, a), &(f.right)(w, a))
    });
    r.check("first-order-d", scope, f.algebra.elements(window).iter(), |a| mismatch(a, &(higher.d)(0, a), &(f.d)(a)));
    r
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CohomologyDegree {
    pub degree: usize,
    /// dim ker(d on Ωⁿ)
    pub kernel: usize,
    /// dim im(d on Ωⁿ⁻¹)
    pub image: usize,
    pub dimension: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<i64>,
}

/// dim Hⁿ = dim ker d|Ωⁿ − dim im d|Ωⁿ⁻¹ for n ≤ max_degree, by exact rank.
/// For windowed bases both spaces are restricted to the window.
pub fn de_rham_cohomology(dc: &GradedDc, max_degree: usize, window: i64) -> Vec<CohomologyDegree> {
    let system = |n: usize| LinearSystem::from_images(&dc.elements(n, window), |x| dc.diff(n, &basis(x)));
    let win = (!dc.is_finite()).then_some(window);
    (0..=max_degree)
        .map(|n| {
            let dom = dc.elements(n, window);
            let sys = system(n);
            let kernel = dom.len() - sys.rank();
            let image = if n == 0 { 0 } else { system(n - 1).rank() };
            CohomologyDegree { degree: n, kernel, image, dimension: kernel as i64 - image as i64, window: win }
        })
        .collect()
}
