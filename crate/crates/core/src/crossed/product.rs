use super::{check_twisted_module_algebra, Cocycle, CrossedError, Measure};
use crate::hopf::{check_algebra, check_comodule_algebra, AlgebraPresentation, ComoduleAlgebra, HopfData};
use crate::linalg::{map1, Basis, BasisIndex, FreeVector};
use crate::report::CheckReport;

/// Index of the element b ⊗ h of B #_σ H.
pub fn crossed_index(b: &BasisIndex, h: &BasisIndex) -> BasisIndex {
    BasisIndex::pair(b, h)
}

#[derive(Clone)]
pub struct CrossedProduct {
    pub base: AlgebraPresentation,
    pub hopf: HopfData,
    pub measure: Measure,
    pub cocycle: Cocycle,
    /// B #_σ H with coaction Id ⊗ Δ.
    pub comodule: ComoduleAlgebra,
    /// Checks run while building.
    pub verification: CheckReport,
}

impl CrossedProduct {
    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.comodule.algebra
    }

    pub fn element(&self, b: &FreeVector, h: &FreeVector) -> FreeVector {
        b.tensor(h)
    }

    pub fn mul(&self, x: &FreeVector, y: &FreeVector) -> FreeVector {
        self.comodule.algebra.mul(x, y)
    }

    /// b ↦ b ⊗ 1.
    pub fn include_base(&self, b: &FreeVector) -> FreeVector {
        b.tensor(&self.hopf.one())
    }
}

fn first_failure(report: &CheckReport) -> Option<CrossedError> {
    report
        .failures()
        .next()
        .map(|f| CrossedError::Precondition { check: f.name.clone(), witness: f.witness.clone().unwrap_or_default() })
}

/// (b⊗h)(b'⊗h') = b(h₁·b')σ(h₂⊗h'₁) ⊗ h₃h'₂, after verifying the twisted
/// module and cocycle conditions and, afterwards, associativity.
pub fn build_crossed_product(
    base: &AlgebraPresentation,
    hopf: &HopfData,
    measure: &Measure,
    cocycle: &Cocycle,
    window: i64,
) -> Result<CrossedProduct, CrossedError> {
    let mut verification = check_twisted_module_algebra(base, hopf, measure, cocycle, window);
    if let Some(e) = first_failure(&verification) {
        return Err(e);
    }
    let (b, h, m, s) = (base.clone(), hopf.clone(), measure.clone(), cocycle.clone());
    let mult = move |p: &BasisIndex, q: &BasisIndex| {
        let (x, g) = p.split2();
        let (y, k) = q.split2();
        let dk = h.delta_idx(k);
        let mut out = FreeVector::zero();
        for (t, c) in h.delta2_idx(g).iter() {
            let (g1, g2, g3) = t.split3();
            let acted = b.mul(&FreeVector::basis(x.clone()), &(m.act)(g1, y));
            for (u, e) in dk.iter() {
                let (k1, k2) = u.split2();
                let left = b.mul(&acted, &(s.sigma)(g2, k1));
                out.add_scaled(&left.tensor(&h.algebra.mul_idx(g3, k2)), &c.mul(e));
            }
        }
        out
    };
    let algebra = AlgebraPresentation::new(
        format!("{} #σ {}", base.name, hopf.name()),
        Basis::product(&base.basis, &hopf.algebra.basis),
        mult,
        base.one().tensor(&hopf.one()),
    );
    let h = hopf.clone();
    let coaction = map1(move |p| {
        let (x, g) = p.split2();
        h.delta_idx(g).map_terms(|f| FreeVector::basis(BasisIndex::pair(&crossed_index(x, f[0]), f[1])))
    });
    let comodule = ComoduleAlgebra { algebra, hopf: hopf.clone(), coaction, coinvariants: None };
    let built = check_algebra(&comodule.algebra, window);
    let coaction_report = check_comodule_algebra(&comodule, window);
    if let Some(e) = first_failure(&built).or_else(|| first_failure(&coaction_report)) {
        return Err(e);
    }
    verification.extend_prefixed("product", built);
    verification.extend_prefixed("product", coaction_report);
    Ok(CrossedProduct {
        base: base.clone(),
        hopf: hopf.clone(),
        measure: measure.clone(),
        cocycle: cocycle.clone(),
        comodule,
        verification,
    })
}
