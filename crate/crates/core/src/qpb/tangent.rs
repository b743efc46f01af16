use std::collections::BTreeMap;

use super::{basis, QpbError, VerticalData};
use crate::linalg::{BasisIndex, FreeVector, Subspace};
use crate::report::{mismatch, pairs, triple_window, CheckReport, Scope};
use crate::scalars::CycScalar;

/// The tangent vector x_j dual to the j-th coinvariant form.
pub fn tangent_index(j: usize) -> BasisIndex {
    BasisIndex::new("x", &[j as i64])
}

/// T = (^{coH}Ω¹(H))* with dual bases {x_j}, {x^j} and the right
/// coaction α₀(γ)α₁ = α(γ₀)S⁻¹(γ₁).
#[derive(Clone)]
pub struct TangentSpace {
    /// x^j, in echelon form.
    pub forms: Vec<FreeVector>,
    pivots: Vec<BasisIndex>,
    space: Subspace,
    /// x_j ↦ Σ x_i ⊗ h, pair indices (x_i, h).
    pub coaction: Vec<FreeVector>,
}

impl TangentSpace {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    /// x_j(γ) for a coinvariant form γ.
    pub fn eval(&self, j: usize, gamma: &FreeVector) -> CycScalar {
        let coords = self.space.coords(gamma).unwrap_or_else(|| panic!("{gamma} is not left-coinvariant"));
        coords.coeff(&self.pivots[j])
    }

    /// Σ_j x_j(γ) x_j as a vector over tangent indices.
    pub fn components(&self, gamma: &FreeVector) -> FreeVector {
        FreeVector::from_terms((0..self.dim()).map(|j| (tangent_index(j), self.eval(j, gamma))))
    }
}

/// Groups a ⊗ κ terms by a: Σ a ⊗ v_a.
pub(crate) fn group_by_first(v: &FreeVector) -> BTreeMap<BasisIndex, FreeVector> {
    let mut out: BTreeMap<BasisIndex, FreeVector> = BTreeMap::new();
    for (t, c) in v.iter() {
        out.entry(t.idx(0).clone()).or_default().add_term(t.idx(1).clone(), c.clone());
    }
    out
}

/// ᾱ = (Id ⊗ α) ∘ ver for α = x_j.
#[derive(Clone)]
pub struct FundamentalFields {
    tangent: TangentSpace,
    vd: VerticalData,
}

impl FundamentalFields {
    pub fn apply(&self, j: usize, omega: &FreeVector) -> FreeVector {
        let mut out = FreeVector::zero();
        for (a, v) in group_by_first(&self.vd.ver_v(omega)) {
            out.add_scaled(&basis(&a), &self.tangent.eval(j, &v));
        }
        out
    }
}

pub fn tangent_and_fields(
    vd: &VerticalData,
    window: i64,
) -> Result<(TangentSpace, FundamentalFields, CheckReport), QpbError> {
    let h_calc = &vd.cf.h_calc;
    if !vd.coinv.complete {
        return Err(QpbError::InfiniteCoinvariants(h_calc.algebra.name.clone()));
    }
    let hopf = &vd.cf.crossed.hopf;
    let rc = h_calc.right_coaction.as_ref().expect("checked when built");
    let space = vd.coinv.space.clone();
    let pivots: Vec<BasisIndex> = space.pivots().cloned().collect();
    let forms = vd.coinv.basis();
    let mut ts = TangentSpace { forms: forms.clone(), pivots, space, coaction: Vec::new() };
    // ρ(γ) grouped by the Hopf factor: h ↦ γ₀
    let split = |gamma: &FreeVector| {
        let mut by_h: BTreeMap<BasisIndex, FreeVector> = BTreeMap::new();
        for (t, c) in gamma.map_linear(|g| (rc.forms)(g)).iter() {
            let (g0, h) = t.split2();
            by_h.entry(h.clone()).or_default().add_term(g0.clone(), c.clone());
        }
        by_h
    };
    let n = ts.dim();
    ts.coaction = (0..n)
        .map(|j| {
            let mut out = FreeVector::zero();
            for (i, xi) in forms.iter().enumerate() {
                for (h, g0) in split(xi) {
                    let c = ts.eval(j, &g0);
                    out.add_scaled(&basis(&tangent_index(i)).tensor(&hopf.s_inv(&basis(&h))), &c);
                }
            }
            out
        })
        .collect();

    let mut report = CheckReport::new();
    let idx: Vec<usize> = (0..n).collect();
    report.check("dual-basis", Scope::Exhaustive, pairs(&idx, &idx), |(j, i)| {
        let v = ts.eval(**j, &forms[**i]);
        let expected = if i == j { CycScalar::one() } else { CycScalar::zero() };
        (v != expected).then(|| format!("x_{j}(x^{i}) = {v}"))
    });
    let tests: Vec<FreeVector> =
        forms.iter().cloned().chain(forms.windows(2).map(|w| w[0].add(&w[1].scale(&CycScalar::from_int(2))))).collect();
    report.check("tangent-coaction", Scope::Exhaustive, pairs(&idx, &tests), |(j, gamma)| {
        let lhs = ts.coaction[**j].map_terms(|t| basis(t[1]).scale(&ts.eval(t[0].int(0) as usize, gamma)));
        let mut rhs = FreeVector::zero();
        for (h, g0) in split(gamma) {
            rhs.add_scaled(&hopf.s_inv(&basis(&h)), &ts.eval(**j, &g0));
        }
        mismatch(format!("x_{j} on {gamma}"), &lhs, &rhs)
    });
    report.check("tangent-comodule", Scope::Exhaustive, idx.iter(), |j| {
        let r = &ts.coaction[**j];
        let lhs = r.map_factor(0, 2, |x| ts.coaction[x.int(0) as usize].clone());
        let rhs = r.map_factor(1, 2, |h| hopf.delta_idx(h));
        let back = r.map_terms(|t| basis(t[0]).scale(&hopf.eps_idx(t[1])));
        mismatch(format!("x_{j}"), &lhs, &rhs)
            .or_else(|| mismatch(format!("counit at x_{j}"), &back, &basis(&tangent_index(**j))))
    });

    let fields = FundamentalFields { tangent: ts.clone(), vd: vd.clone() };
    let f = &vd.cf.fodc;
    let scope = f.scope(window);
    let pw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let (xs, ws) = (f.algebra.elements(pw), f.form_elements(pw));
    let all_forms = f.form_elements(window);
    let one_b = vd.cf.crossed.base.one();
    report.check("field-left-linear", f.scope(pw), pairs(&idx, &pairs(&xs, &ws)), |(j, (x, w))| {
        let lhs = fields.apply(**j, &(f.left)(x, w));
        let rhs = f.algebra.mul(&basis(x), &fields.apply(**j, &basis(w)));
        mismatch(format!("x_{j} at {x}·{w}"), &lhs, &rhs)
    });
    report.check("field-vertical", scope, pairs(&idx, &all_forms), |(j, w)| {
        if w.tag() != "hor" {
            return None;
        }
        let v = fields.apply(**j, &basis(w));
        (!v.is_zero()).then(|| format!("x_{j} on {w} gives {v}"))
    });
    report.check("field-normalized", Scope::Exhaustive, pairs(&idx, &idx), |(j, i)| {
        let omega = crate::crossed_calc::ver(&one_b, &forms[**i]);
        let expected = f.algebra.one().scale(&ts.eval(**j, &forms[**i]));
        mismatch(format!("x_{j} on 1 ⊗ x^{i}"), &fields.apply(**j, &omega), &expected)
    });
    // A left-linear vertical field is fixed by its values on 1 ⊗ x^i.
    report.check("field-unique", scope, pairs(&idx, &all_forms), |(j, w)| {
        let mut rebuilt = FreeVector::zero();
        for (a, v) in group_by_first(&(vd.ver)(w)) {
            for (i, xi) in forms.iter().enumerate() {
                let c = ts.eval(i, &v);
                if c.is_zero() {
                    continue;
                }
                let at_unit = fields.apply(**j, &crate::crossed_calc::ver(&one_b, xi));
                rebuilt.add_scaled(&f.algebra.mul(&basis(&a), &at_unit), &c);
            }
        }
        mismatch(format!("x_{j} on {w}"), &fields.apply(**j, &basis(w)), &rebuilt)
    });
    Ok((ts, fields, report))
}
