use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use super::{build_crossed_product, crossed_index, Cocycle, CrossedError, CrossedProduct, Measure};
use crate::hopf::{convolution_inverse, AlgebraPresentation, ComoduleAlgebra};
use crate::linalg::{map1, BasisIndex, FreeVector, Map1};
use crate::report::{mismatch, triple_window, CheckReport, Scope};

/// Rewrites an element of A lying in the image of B in B's own basis, or
/// `None` if it does not lie there.
pub type Retraction = Arc<dyn Fn(&FreeVector) -> Option<FreeVector> + Send + Sync>;

/// A cleft extension B ⊆ A with cleaving map j: H → A.
#[derive(Clone)]
pub struct CleftData {
    pub total: ComoduleAlgebra,
    pub base: AlgebraPresentation,
    pub inclusion: Map1,
    pub retraction: Retraction,
    pub cleaving: Map1,
    pub cleaving_inv: Option<Map1>,
}

impl CleftData {
    /// B is a sub-presentation of A on a subset of A's (finite) basis
    /// indices.
    pub fn with_subalgebra(total: ComoduleAlgebra, base: AlgebraPresentation, cleaving: Map1) -> Self {
        let members: std::collections::BTreeSet<BasisIndex> = base.basis.elements().into_iter().collect();
        CleftData {
            total,
            base,
            inclusion: map1(|i| FreeVector::basis(i.clone())),
            retraction: Arc::new(move |v| v.indices().all(|i| members.contains(i)).then(|| v.clone())),
            cleaving,
            cleaving_inv: None,
        }
    }
}

/// The crossed product recovered from cleft data and the isomorphism
/// θ: A → B #_σ H with inverse b⊗h ↦ b j(h).
#[derive(Clone)]
pub struct CleftCrossed {
    pub crossed: CrossedProduct,
    pub cleaving_inv: Map1,
    pub theta: Map1,
    pub theta_inv: Map1,
    pub report: CheckReport,
}

fn retract_or(c: &CleftData, v: &FreeVector, what: impl FnOnce() -> String) -> Result<FreeVector, CrossedError> {
    (c.retraction)(v).ok_or_else(|| CrossedError::NotCoinvariant(format!("{} = {v}", what())))
}

type RawMap2 = dyn Fn(&BasisIndex, &BasisIndex) -> FreeVector + Send + Sync;

pub fn cleft_to_crossed(c: &CleftData, window: i64) -> Result<CleftCrossed, CrossedError> {
    let a = &c.total.algebra;
    let h = c.total.hopf.clone();
    let jinv: Map1 = match &c.cleaving_inv {
        Some(f) => f.clone(),
        None => {
            let hb = h.algebra.basis.elements();
            let table = convolution_inverse(&h.coalgebra(), a, |x| (c.cleaving)(x), &hb, &a.basis.elements())?;
            map1(move |x| table[x].clone())
        }
    };
    let j = c.cleaving.clone();

    // Raw (A-valued) measure, cocycle and inverse cocycle.
    let raw_act = {
        let (a, h, j, jinv, inc) = (a.clone(), h.clone(), j.clone(), jinv.clone(), c.inclusion.clone());
        move |x: &BasisIndex, b: &BasisIndex| {
            let ib = inc(b);
            h.delta_idx(x).map_terms(|f| a.mul3(&j(f[0]), &ib, &jinv(f[1])))
        }
    };
    let raw_sigma = {
        let (a, h, j, jinv) = (a.clone(), h.clone(), j.clone(), jinv.clone());
        move |x: &BasisIndex, y: &BasisIndex| {
            let dy = h.delta_idx(y);
            h.delta_idx(x).map_terms(|f| {
                dy.map_terms(|g| {
                    let prod = h.algebra.mul_idx(f[1], g[1]).map_linear(|k| jinv(k));
                    a.mul3(&j(f[0]), &j(g[0]), &prod)
                })
            })
        }
    };
    let raw_sigma_inv = {
        let (a, h, j, jinv) = (a.clone(), h.clone(), j.clone(), jinv.clone());
        move |x: &BasisIndex, y: &BasisIndex| {
            let dy = h.delta_idx(y);
            h.delta_idx(x).map_terms(|f| {
                dy.map_terms(|g| {
                    let prod = h.algebra.mul_idx(f[0], g[0]).map_linear(|k| j(k));
                    a.mul3(&prod, &jinv(g[1]), &jinv(f[1]))
                })
            })
        }
    };

    let (hs, bs) = (h.algebra.elements(window), c.base.elements(window));
    for x in &hs {
        for b in &bs {
            retract_or(c, &raw_act(x, b), || format!("{x}·{b}"))?;
        }
        for y in &hs {
            retract_or(c, &raw_sigma(x, y), || format!("σ({x}⊗{y})"))?;
            retract_or(c, &raw_sigma_inv(x, y), || format!("σ⁻¹({x}⊗{y})"))?;
        }
    }
    // Memoized: the crossed product calls these on the same pairs repeatedly.
    let wrap2 = |f: Box<RawMap2>, what: &'static str| {
        let r = c.retraction.clone();
        let memo: Mutex<BTreeMap<(BasisIndex, BasisIndex), FreeVector>> = Mutex::default();
        move |x: &BasisIndex, y: &BasisIndex| {
            let key = (x.clone(), y.clone());
            if let Some(v) = memo.lock().unwrap().get(&key) {
                return v.clone();
            }
            let v = f(x, y);
            let b = r(&v).unwrap_or_else(|| panic!("{what}({x}, {y}) = {v} is outside the coinvariants"));
            memo.lock().unwrap().insert(key, b.clone());
            b
        }
    };
    let measure = Measure::new(wrap2(Box::new(raw_act), "measure"));
    let cocycle = Cocycle::new(wrap2(Box::new(raw_sigma), "σ"), wrap2(Box::new(raw_sigma_inv), "σ⁻¹"));
    let crossed = build_crossed_product(&c.base, &h, &measure, &cocycle, window)?;

    // θ(a) = a₀ j⁻¹(a₁) ⊗ a₂, grouped by a₂ before retracting.
    let theta_try = {
        let (a, h, jinv, comod, r) = (a.clone(), h.clone(), jinv.clone(), c.total.clone(), c.retraction.clone());
        move |x: &BasisIndex| -> Result<FreeVector, String> {
            let expanded = comod.rho_idx(x).map_factor(1, 2, |y| h.delta_idx(y));
            let mut by_h: BTreeMap<BasisIndex, FreeVector> = BTreeMap::new();
            for (t, coeff) in expanded.iter() {
                let (a0, a1, a2) = t.split3();
                let part = a.mul(&FreeVector::basis(a0.clone()), &jinv(a1));
                by_h.entry(a2.clone()).or_default().add_scaled(&part, coeff);
            }
            let mut out = FreeVector::zero();
            for (k, v) in by_h {
                let b = r(&v).ok_or_else(|| format!("θ({x}) component at {k}: {v}"))?;
                out.add_assign(&b.tensor(&FreeVector::basis(k)));
            }
            Ok(out)
        }
    };
    let theta_inv = {
        let (a, j, inc) = (a.clone(), j.clone(), c.inclusion.clone());
        map1(move |p| {
            let (b, k) = p.split2();
            a.mul(&inc(b), &j(k))
        })
    };

    let mut report = crossed.verification.clone();
    let ascope = a.scope(window);
    let scope = ascope.join(h.algebra.scope(window));
    let els = a.elements(window);
    report.check("cleaving-unital", Scope::Exhaustive, [()], |_| {
        mismatch("j(1)", &h.one().map_linear(|k| j(k)), &a.one())
    });
    report.check("cleaving-colinear", h.algebra.scope(window), hs.iter(), |x| {
        let lhs = c.total.rho(&j(x));
        let rhs = h.delta_idx(x).map_factor(0, 1, |y| j(y));
        mismatch(x, &lhs, &rhs)
    });
    report.check("cleaving-inverse", h.algebra.scope(window), hs.iter(), |x| {
        let d = h.delta_idx(x);
        let target = a.one().scale(&h.eps_idx(x));
        let left = d.map_terms(|f| a.mul(&j(f[0]), &jinv(f[1])));
        let right = d.map_terms(|f| a.mul(&jinv(f[0]), &j(f[1])));
        mismatch(format!("j⋆j⁻¹ at {x}"), &left, &target).or_else(|| mismatch(format!("j⁻¹⋆j at {x}"), &right, &target))
    });
    let mut theta_ok = true;
    report.check("theta-defined", ascope, els.iter(), |x| {
        let r = theta_try(x).err();
        theta_ok &= r.is_none();
        r
    });
    if theta_ok {
        report.check("theta-inverse", scope, els.iter(), |x| {
            let t = theta_try(x).expect("checked");
            mismatch(x, &t.map_linear(|p| theta_inv(p)), &FreeVector::basis((*x).clone()))
        });
        let bh: Vec<_> = bs.iter().flat_map(|b| hs.iter().map(move |k| crossed_index(b, k))).collect();
        report.check("theta-inverse-other-side", scope, bh.iter(), |p| {
            let back = theta_inv(p).map_linear(|y| theta_try(y).unwrap_or_else(|e| panic!("{e}")));
            mismatch(p, &back, &FreeVector::basis((*p).clone()))
        });
        let tw = if ascope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
        let small = a.elements(tw);
        let pairs: Vec<_> = small.iter().flat_map(|x| small.iter().map(move |y| (x, y))).collect();
        report.check("theta-multiplicative", scope, pairs.iter(), |(x, y)| {
            let lhs = a.mul_idx(x, y).map_linear(|z| theta_try(z).unwrap_or_else(|e| panic!("{e}")));
            let rhs = crossed.mul(&theta_try(x).expect("checked"), &theta_try(y).expect("checked"));
            mismatch(format!("({x}, {y})"), &lhs, &rhs)
        });
        report.check("theta-colinear", scope, els.iter(), |x| {
            let lhs = c.total.rho_idx(x).map_factor(0, 1, |y| theta_try(y).unwrap_or_else(|e| panic!("{e}")));
            let rhs = crossed.comodule.rho(&theta_try(x).expect("checked"));
            mismatch(x, &lhs, &rhs)
        });
    }
    let theta = map1(move |x| theta_try(x).unwrap_or_else(|e| panic!("{e}")));
    Ok(CleftCrossed { crossed, cleaving_inv: jinv, theta, theta_inv, report })
}
