//! Right comodule algebras A → A⊗H and their coinvariants.

use std::sync::Arc;

use super::algebra::AlgebraPresentation;
use super::hopf_data::HopfData;
use crate::linalg::{BasisIndex, FreeVector, LinearSystem, Map1, Subspace};
use crate::report::{mismatch, triple_window, CheckReport};

/// A declared family of coinvariants of an infinite comodule algebra:
/// an enumerator of spanning elements and a membership predicate.
#[derive(Clone)]
pub struct CoinvariantFamily {
    pub description: String,
    pub enumerate: Arc<dyn Fn(i64) -> Vec<FreeVector> + Send + Sync>,
    pub contains: Arc<dyn Fn(&FreeVector) -> bool + Send + Sync>,
}

#[derive(Clone)]
pub struct ComoduleAlgebra {
    pub algebra: AlgebraPresentation,
    pub hopf: HopfData,
    pub coaction: Map1,
    pub coinvariants: Option<CoinvariantFamily>,
}

impl ComoduleAlgebra {
    pub fn rho(&self, v: &FreeVector) -> FreeVector {
        v.map_linear(|i| (self.coaction)(i))
    }

    pub fn rho_idx(&self, i: &BasisIndex) -> FreeVector {
        (self.coaction)(i)
    }

    /// Product in A⊗H.
    pub fn mul_ah(&self, x: &FreeVector, y: &FreeVector) -> FreeVector {
        x.bilinear(y, |p, q| {
            let (a, h) = p.split2();
            let (b, g) = q.split2();
            self.algebra.mul_idx(a, b).tensor(&self.hopf.algebra.mul_idx(h, g))
        })
    }

    /// ρ(v) − v⊗1, zero exactly on coinvariants.
    pub fn coinvariance_defect(&self, v: &FreeVector) -> FreeVector {
        self.rho(v).sub(&v.tensor(&self.hopf.one()))
    }

    /// Coinvariant subalgebra of a finite comodule algebra, by a kernel
    /// computation.
    pub fn coinvariant_subspace(&self) -> Subspace {
        let basis = self.algebra.basis.elements();
        LinearSystem::from_images(&basis, |i| self.coinvariance_defect(&FreeVector::basis(i.clone()))).kernel()
    }
}

pub fn check_comodule_algebra(c: &ComoduleAlgebra, window: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let scope = c.algebra.scope(window).join(c.hopf.algebra.scope(window));
    let els = c.algebra.elements(window);
    let h = &c.hopf;

    report.check("coaction-coassociativity", scope, els.iter(), |a| {
        let r = c.rho_idx(a);
        let lhs = r.map_factor(0, 2, |x| c.rho_idx(x));
        let rhs = r.map_factor(1, 2, |y| h.delta_idx(y));
        mismatch(a, &lhs, &rhs)
    });
    report.check("coaction-counit", scope, els.iter(), |a| {
        let r = c.rho_idx(a);
        let back = r.map_terms(|f| FreeVector::basis(f[0].clone()).scale(&h.eps_idx(f[1])));
        mismatch(a, &back, &FreeVector::basis((*a).clone()))
    });
    let tw = if c.algebra.is_finite() { window } else { triple_window(window).max(1) };
    let small = c.algebra.elements(tw);
    let pairs: Vec<_> = small.iter().flat_map(|x| small.iter().map(move |y| (x, y))).collect();
    report.check("coaction-multiplicative", scope, pairs.iter(), |(a, b)| {
        let lhs = c.rho(&c.algebra.mul_idx(a, b));
        let rhs = c.mul_ah(&c.rho_idx(a), &c.rho_idx(b));
        mismatch(format!("({a}, {b})"), &lhs, &rhs)
    });
    report.check("coaction-unit", scope, [()], |_| {
        let one = c.algebra.one();
        mismatch("1", &c.rho(&one), &one.tensor(&h.one()))
    });
    if let Some(fam) = &c.coinvariants {
        report.check("declared-coinvariants", scope, (fam.enumerate)(window), |b| {
            let defect = c.coinvariance_defect(b);
            (!defect.is_zero()).then(|| format!("ρ({b}) − {b}⊗1 = {defect}"))
        });
    }
    report
}
