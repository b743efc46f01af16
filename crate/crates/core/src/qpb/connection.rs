use std::sync::Arc;

use super::tangent::group_by_first;
use super::{basis, right_coaction, vt, QpbError, TangentSpace, VerticalData};
use crate::crossed_calc::{hor, ver};
use crate::linalg::{BasisIndex, FreeVector, LinearSystem};
use crate::report::{mismatch, pairs, triple_window, CheckReport, Scope};

type VtMap = Arc<dyn Fn(&FreeVector) -> FreeVector + Send + Sync>;

/// A map c: A ⊗ ^{coH}Ω¹(H) → Ω¹(A), meant to be a left A-linear,
/// right H-colinear splitting of ver.
#[derive(Clone)]
pub struct Connection {
    map: VtMap,
}

impl Connection {
    pub fn new(f: impl Fn(&FreeVector) -> FreeVector + Send + Sync + 'static) -> Self {
        Connection { map: Arc::new(f) }
    }

    pub fn apply(&self, v: &FreeVector) -> FreeVector {
        (self.map)(v)
    }
}

/// φ = Σ_j x_j ⊗ φ_j in T ⊗ Ω¹(A); `components[j]` is φ_j.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionForm {
    pub components: Vec<FreeVector>,
}

#[derive(Clone)]
pub enum ConnectionData {
    Connection(Connection),
    Form(ConnectionForm),
}

fn scopes(vd: &VerticalData, window: i64) -> (Scope, i64) {
    let scope = vd.cf.fodc.scope(window);
    let pw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    (scope, pw)
}

/// Left linearity, colinearity, ver ∘ c = Id and ker(c ∘ ver) = Ω¹(B) ⊗ H.
pub fn check_connection(vd: &VerticalData, c: &Connection, window: i64) -> CheckReport {
    let f = &vd.cf.fodc;
    let (scope, pw) = scopes(vd, window);
    let tests = vd.test_elements(window);
    let small = vd.test_elements(pw);
    let xs = f.algebra.elements(pw);
    let mut r = CheckReport::new();
    r.check("connection-left-linear", f.scope(pw), pairs(&xs, &small), |(x, v)| {
        let x = basis(x);
        mismatch(format!("{x}·({v})"), &c.apply(&vd.act(&x, v)), &f.left_act(&x, &c.apply(v)))
    });
    let rc = right_coaction(f).expect("checked when built");
    r.check("connection-colinear", scope, tests.iter(), |v| {
        let lhs = c.apply(v).map_linear(|w| (rc.forms)(w));
        let rhs = vd.coact(v).map_factor(0, 1, |t| c.apply(&basis(t)));
        mismatch(v, &lhs, &rhs)
    });
    r.check("ver-c-identity", scope, tests.iter(), |v| mismatch(v, &vd.ver_v(&c.apply(v)), v));
    let forms = f.form_elements(window);
    let pi = |w: &BasisIndex| c.apply(&(vd.ver)(w));
    r.check("projection-idempotent", scope, forms.iter(), |w| {
        let once = pi(w);
        mismatch(w, &c.apply(&vd.ver_v(&once)), &once)
    });
    let kernel = LinearSystem::from_images(&forms, pi).kernel();
    let horizontal = forms.iter().filter(|w| w.tag() == "hor").count();
    let stray = kernel.basis().find(|v| v.indices().any(|i| i.tag() != "hor"));
    r.record(
        "projection-kernel",
        scope,
        stray.is_none() && kernel.dim() == horizontal,
        Some(match stray {
            Some(v) => format!("{v} is killed by c ∘ ver"),
            None => format!("kernel dimension {} against {horizontal}", kernel.dim()),
        }),
        None,
    );
    r
}

/// c(a ⊗ γ) = ι₂(g(a ⊗ γ)), i.e. (b ⊗ h) ⊗ γ ↦ b ⊗ hγ in B ⊗ Ω¹(H).
pub fn canonical_connection(vd: &VerticalData, window: i64) -> (Connection, CheckReport) {
    let c = {
        let vd = vd.clone();
        Connection::new(move |v| vd.g_v(v))
    };
    let mut r = check_connection(vd, &c, window);
    let (scope, _) = scopes(vd, window);
    let f = &vd.cf.fodc;
    let one_a = f.algebra.one();
    let one_b = vd.cf.crossed.base.one();
    let kappas = vd.coinv.basis();
    r.check("canonical-unit", Scope::Exhaustive, kappas.iter(), |k| {
        mismatch(k, &c.apply(&vt(&one_a, k)), &ver(&one_b, k))
    });
    // (Id − c ∘ ver) d(b ⊗ h) = d_B b ⊗ h
    r.check("strong", scope, f.algebra.elements(window).iter(), |a| {
        let da = (f.d)(a);
        let horizontal = da.sub(&c.apply(&vd.ver_v(&da)));
        let (b, h) = a.split2();
        mismatch(a, &horizontal, &hor(&vd.cf.b_calc.diff(&basis(b)), &basis(h)))
    });
    (c, r)
}

fn first_failure(r: &CheckReport) -> Option<QpbError> {
    r.failures()
        .next()
        .map(|e| QpbError::InvalidInput { check: e.name.clone(), witness: e.witness.clone().unwrap_or_default() })
}

/// Coinvariance of Σ x_j ⊗ φ_j and ver(φ_j) = 1 ⊗ x^j.
fn check_connection_form(vd: &VerticalData, ts: &TangentSpace, phi: &ConnectionForm) -> CheckReport {
    let mut r = CheckReport::new();
    if phi.components.len() != ts.dim() {
        r.record(
            "form-shape",
            Scope::Exhaustive,
            false,
            Some(format!("{} components for a {}-dimensional tangent space", phi.components.len(), ts.dim())),
            None,
        );
        return r;
    }
    let f = &vd.cf.fodc;
    let rc = right_coaction(f).expect("checked when built");
    let hopf = &vd.cf.crossed.hopf;
    let pair_up = |x: &BasisIndex, w: &BasisIndex| BasisIndex::wrap("tf", &[x.clone(), w.clone()]);
    let mut lhs = FreeVector::zero();
    let mut rhs = FreeVector::zero();
    for (j, phi_j) in phi.components.iter().enumerate() {
        let rho_phi = phi_j.map_linear(|w| (rc.forms)(w));
        for (t, c) in ts.coaction[j].iter() {
            let (xi, h) = t.split2();
            let term = rho_phi.map_terms(|u| basis(&pair_up(xi, u[0])).tensor(&hopf.algebra.mul_idx(h, u[1])));
            lhs.add_scaled(&term, c);
        }
        let xj = super::tangent_index(j);
        rhs.add_assign(&phi_j.map_linear(|w| basis(&pair_up(&xj, w))).tensor(&hopf.one()));
    }
    r.record("form-coinvariant", Scope::Exhaustive, lhs == rhs, mismatch("Σ x_j ⊗ φ_j", &lhs, &rhs), None);
    let one_a = f.algebra.one();
    let idx: Vec<usize> = (0..ts.dim()).collect();
    r.check("form-vertical-part", Scope::Exhaustive, idx.iter(), |j| {
        mismatch(format!("φ_{j}"), &vd.ver_v(&phi.components[**j]), &vt(&one_a, &ts.forms[**j]))
    });
    r
}

/// c_φ(a ⊗ γ) = Σ_j x_j(γ) a·φ_j.
fn form_to_connection(vd: &VerticalData, ts: &TangentSpace, phi: &ConnectionForm) -> Connection {
    let (f, ts, comps) = (vd.cf.fodc.clone(), ts.clone(), phi.components.clone());
    Connection::new(move |v| {
        let mut out = FreeVector::zero();
        for (a, gamma) in group_by_first(v) {
            for (j, phi_j) in comps.iter().enumerate() {
                let c = ts.eval(j, &gamma);
                if !c.is_zero() {
                    out.add_scaled(&f.left_act(&basis(&a), phi_j), &c);
                }
            }
        }
        out
    })
}

/// Converts a connection into its connection form or back, verifying the
/// input first and both round trips after.
pub fn connection_form_bijection(
    vd: &VerticalData,
    ts: &TangentSpace,
    input: &ConnectionData,
    window: i64,
) -> Result<(ConnectionData, CheckReport), QpbError> {
    let f = &vd.cf.fodc;
    let (scope, _) = scopes(vd, window);
    let one_a = f.algebra.one();
    match input {
        ConnectionData::Connection(c) => {
            let mut r = check_connection(vd, c, window);
            if let Some(e) = first_failure(&r) {
                return Err(e);
            }
            let phi = ConnectionForm { components: ts.forms.iter().map(|x| c.apply(&vt(&one_a, x))).collect() };
            r.extend(check_connection_form(vd, ts, &phi));
            let back = form_to_connection(vd, ts, &phi);
            let tests = vd.test_elements(window);
            r.check("roundtrip-connection", scope, tests.iter(), |v| mismatch(v, &back.apply(v), &c.apply(v)));
            Ok((ConnectionData::Form(phi), r))
        }
        ConnectionData::Form(phi) => {
            let mut r = check_connection_form(vd, ts, phi);
            if let Some(e) = first_failure(&r) {
                return Err(e);
            }
            let c = form_to_connection(vd, ts, phi);
            r.extend(check_connection(vd, &c, window));
            let idx: Vec<usize> = (0..ts.dim()).collect();
            r.check("roundtrip-form", Scope::Exhaustive, idx.iter(), |j| {
                mismatch(format!("φ_{j}"), &c.apply(&vt(&one_a, &ts.forms[**j])), &phi.components[**j])
            });
            Ok((ConnectionData::Connection(c), r))
        }
    }
}
