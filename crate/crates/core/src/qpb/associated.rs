use std::sync::Arc;

use super::{basis, QpbError};
use crate::crossed::crossed_index;
use crate::crossed_calc::CrossedFodc;
use crate::linalg::{BasisIndex, FreeVector, LinearSystem, Map1};
use crate::report::{mismatch, pairs, triple_window, CheckReport, Scope};

/// A finite-dimensional right H-comodule V.
#[derive(Clone)]
pub struct VComodule {
    pub name: String,
    pub basis: Vec<BasisIndex>,
    /// v ↦ Σ v₀ ⊗ v₁.
    pub coaction: Map1,
}

/// Declared sections of E for an infinite total space: the elements of
/// (A ⊗ V)^coH up to a window, as vectors over `ev` indices.
pub type SectionFamily = Arc<dyn Fn(i64) -> Vec<FreeVector> + Send + Sync>;

/// Index of a ⊗ v in A ⊗ V.
fn ev_index(a: &BasisIndex, v: &BasisIndex) -> BasisIndex {
    BasisIndex::wrap("ev", &[a.clone(), v.clone()])
}

/// Index of β ⊗ h ⊗ v in Ω¹(B) ⊗ H ⊗ V ≅ Ω¹(B) ⊗_B E.
fn oe_index(beta: &BasisIndex, h: &BasisIndex, v: &BasisIndex) -> BasisIndex {
    BasisIndex::wrap("oe", &[beta.clone(), h.clone(), v.clone()])
}

/// Sections of E = (A ⊗ V)^coH with ∇ = (d_B ⊗ Id) and the generalised
/// braiding σ_E(e ⊗ β) = b(h₁·β) ⊗ h₂ ⊗ v.
#[derive(Clone)]
pub struct AssociatedBundle {
    pub sections: Vec<FreeVector>,
    /// Whether `sections` span all of E.
    pub complete: bool,
    cf: CrossedFodc,
    pub report: CheckReport,
}

impl AssociatedBundle {
    pub fn nabla(&self, e: &FreeVector) -> FreeVector {
        let bc = &self.cf.b_calc;
        e.map_linear(|t| {
            let (b, h) = t.idx(0).split2();
            bc.diff(&basis(b)).map_linear(|beta| basis(&oe_index(beta, h, t.idx(1))))
        })
    }

    pub fn sigma(&self, e: &FreeVector, beta: &FreeVector) -> FreeVector {
        let (bc, hopf, tw) = (&self.cf.b_calc, &self.cf.crossed.hopf, &self.cf.twisted);
        e.bilinear(beta, |t, w| {
            let (b, h) = t.idx(0).split2();
            hopf.delta_idx(h).map_terms(|s| {
                let moved = bc.left_act(&basis(b), &tw(s[0], w));
                moved.map_linear(|g| basis(&oe_index(g, s[1], t.idx(1))))
            })
        })
    }

    /// (b' ⊗ 1)·e.
    pub fn left_b(&self, b: &FreeVector, e: &FreeVector) -> FreeVector {
        let cp = &self.cf.crossed;
        let lifted = cp.include_base(b);
        e.map_linear(|t| cp.mul(&lifted, &basis(t.idx(0))).map_linear(|a| basis(&ev_index(a, t.idx(1)))))
    }

    /// e·(b' ⊗ 1).
    pub fn right_b(&self, e: &FreeVector, b: &FreeVector) -> FreeVector {
        let cp = &self.cf.crossed;
        let lifted = cp.include_base(b);
        e.map_linear(|t| cp.mul(&basis(t.idx(0)), &lifted).map_linear(|a| basis(&ev_index(a, t.idx(1)))))
    }

    fn form_left(&self, b: &FreeVector, w: &FreeVector) -> FreeVector {
        let bc = &self.cf.b_calc;
        w.map_linear(|t| {
            let (beta, h, v) = (t.idx(0), t.idx(1), t.idx(2));
            bc.left_act(b, &basis(beta)).map_linear(|g| basis(&oe_index(g, h, v)))
        })
    }

    /// (β ⊗ h ⊗ v)·b' = β(h₁·b') ⊗ h₂ ⊗ v.
    fn form_right(&self, w: &FreeVector, b: &FreeVector) -> FreeVector {
        let (bc, cp) = (&self.cf.b_calc, &self.cf.crossed);
        w.map_linear(|t| {
            let (beta, h, v) = (t.idx(0), t.idx(1), t.idx(2));
            cp.hopf.delta_idx(h).map_terms(|s| {
                let acted = cp.measure.apply(&basis(s[0]), b);
                bc.right_act(&basis(beta), &acted).map_linear(|g| basis(&oe_index(g, s[1], v)))
            })
        })
    }

    /// β ⊗_B e.
    fn tensor_b(&self, beta: &FreeVector, e: &FreeVector) -> FreeVector {
        let bc = &self.cf.b_calc;
        e.map_linear(|t| {
            let (b, h) = t.idx(0).split2();
            bc.right_act(beta, &basis(b)).map_linear(|g| basis(&oe_index(g, h, t.idx(1))))
        })
    }
}

/// E ⊂ A ⊗ V by a kernel computation when A is finite, otherwise from the
/// declared family after checking coinvariance on the window; then the
/// left and right Leibniz rules and the bimodule properties of σ_E.
pub fn covariant_derivative(
    cf: &CrossedFodc,
    v: &VComodule,
    family: Option<SectionFamily>,
    window: i64,
) -> Result<AssociatedBundle, QpbError> {
    let cp = &cf.crossed;
    let a = cp.algebra();
    let hopf = &cp.hopf;
    let rho = |e: &FreeVector| {
        e.map_linear(|t| {
            (cp.comodule.coaction)(t.idx(0)).bilinear(&(v.coaction)(t.idx(1)), |p, q| {
                let ((a0, a1), (v0, v1)) = (p.split2(), q.split2());
                basis(&ev_index(a0, v0)).tensor(&hopf.algebra.mul_idx(a1, v1))
            })
        })
    };
    let defect = |e: &FreeVector| rho(e).sub(&e.tensor(&hopf.one()));
    let mut report = CheckReport::new();
    let (sections, complete) = if a.is_finite() {
        let domain: Vec<BasisIndex> =
            pairs(&a.basis.elements(), &v.basis).into_iter().map(|(x, y)| ev_index(x, y)).collect();
        let kernel = LinearSystem::from_images(&domain, |i| defect(&basis(i))).kernel();
        report.record(
            "sections",
            Scope::Exhaustive,
            true,
            None,
            Some(format!("dimension {} with dim V = {}", kernel.dim(), v.basis.len())),
        );
        (kernel.basis().cloned().collect::<Vec<_>>(), true)
    } else {
        let family = family.ok_or(QpbError::CoinvariantsNotComputable)?;
        let declared = family(window);
        if let Some(e) = declared.iter().find(|e| !defect(e).is_zero()) {
            return Err(QpbError::NotCoinvariant(e.to_string()));
        }
        report.record(
            "sections-coinvariant",
            Scope::Window(window),
            true,
            None,
            Some(format!("{} sections with dim V = {}", declared.len(), v.basis.len())),
        );
        (declared, false)
    };
    let mut bundle = AssociatedBundle { sections, complete, cf: cf.clone(), report: CheckReport::new() };

    let bc = &cf.b_calc;
    let scope = a.scope(window).join(bc.scope(window));
    let pw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let bs = bc.algebra.elements(pw);
    let betas = bc.form_elements(pw);
    let es = &bundle.sections;
    let b = &bundle;
    report.check("left-leibniz", scope, pairs(&bs, es), |(x, e)| {
        let x = basis(x);
        let lhs = b.nabla(&b.left_b(&x, e));
        let rhs = b.tensor_b(&bc.diff(&x), e).add(&b.form_left(&x, &b.nabla(e)));
        mismatch(format!("{x}·e"), &lhs, &rhs)
    });
    report.check("right-leibniz", scope, pairs(es, &bs), |(e, x)| {
        let x = basis(x);
        let lhs = b.nabla(&b.right_b(e, &x));
        let rhs = b.sigma(e, &bc.diff(&x)).add(&b.form_right(&b.nabla(e), &x));
        mismatch(format!("e·{x}"), &lhs, &rhs)
    });
    let triples: Vec<(&FreeVector, &BasisIndex, &BasisIndex)> =
        pairs(es, &betas).into_iter().flat_map(|(e, w)| bs.iter().map(move |x| (e, w, x))).collect();
    report.check("sigma-left-linear", scope, triples.iter(), |(e, w, x)| {
        let (x, w) = (basis(x), basis(w));
        mismatch(format!("{x}·e ⊗ {w}"), &b.sigma(&b.left_b(&x, e), &w), &b.form_left(&x, &b.sigma(e, &w)))
    });
    report.check("sigma-right-linear", scope, triples.iter(), |(e, w, x)| {
        let (x, w) = (basis(x), basis(w));
        mismatch(format!("e ⊗ {w}·{x}"), &b.sigma(e, &bc.right_act(&w, &x)), &b.form_right(&b.sigma(e, &w), &x))
    });
    report.check("sigma-balanced", scope, triples.iter(), |(e, w, x)| {
        let (x, w) = (basis(x), basis(w));
        mismatch(format!("e·{x} ⊗ {w}"), &b.sigma(&b.right_b(e, &x), &w), &b.sigma(e, &bc.left_act(&x, &w)))
    });
    // σ_E(e ⊗ x dy) = ∇(exy) − ∇(ex)·y, so σ_E is forced by ∇.
    report.check("sigma-unique", scope, pairs(es, &betas).iter(), |(e, w)| {
        let rebuilt = (bc.presentation)(w).map_terms(|t| {
            let (x, y) = (basis(t[0]), basis(t[1]));
            let ex = b.right_b(e, &x);
            b.nabla(&b.right_b(&ex, &y)).sub(&b.form_right(&b.nabla(&ex), &y))
        });
        mismatch(format!("e ⊗ {w}"), &b.sigma(e, &basis(w)), &rebuilt)
    });
    bundle.report = report;
    Ok(bundle)
}

/// The section a ⊗ v of A ⊗ V as a vector over `ev` indices.
pub fn section(b: &BasisIndex, h: &BasisIndex, v: &BasisIndex) -> FreeVector {
    basis(&ev_index(&crossed_index(b, h), v))
}
