use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{check_algebra, AlgebraPresentation};
use super::HopfError;
use crate::linalg::{map1, Basis, BasisIndex, FreeVector, LinearSystem, Map1, ScalarMap};
use crate::report::{mismatch, CheckReport};
use crate::scalars::CycScalar;

/// Comultiplication and counit, enough for convolution products.
#[derive(Clone)]
pub struct Coalgebra {
    pub basis: Basis,
    pub comul: Map1,
    pub counit: ScalarMap,
}

impl Coalgebra {
    pub fn delta(&self, v: &FreeVector) -> FreeVector {
        v.map_linear(|i| (self.comul)(i))
    }

    pub fn eps(&self, v: &FreeVector) -> CycScalar {
        v.functional(|i| (self.counit)(i))
    }

    /// Tensor product coalgebra on pair indices.
    pub fn tensor(&self, other: &Coalgebra) -> Coalgebra {
        let (a, b) = (self.clone(), other.clone());
        let (a2, b2) = (self.clone(), other.clone());
        Coalgebra {
            basis: Basis::product(&self.basis, &other.basis),
            comul: map1(move |i| {
                let (x, y) = i.split2();
                let dx = (a.comul)(x);
                let dy = (b.comul)(y);
                let mut out = FreeVector::zero();
                for (p, c) in dx.iter() {
                    let (x1, x2) = p.split2();
                    for (q, e) in dy.iter() {
                        let (y1, y2) = q.split2();
                        out.add_term(BasisIndex::pair(&BasisIndex::pair(x1, y1), &BasisIndex::pair(x2, y2)), c.mul(e));
                    }
                }
                out
            }),
            counit: Arc::new(move |i| {
                let (x, y) = i.split2();
                (a2.counit)(x).mul(&(b2.counit)(y))
            }),
        }
    }
}

/// A Hopf algebra with invertible antipode, all maps given on basis indices.
#[derive(Clone)]
pub struct HopfData {
    pub algebra: AlgebraPresentation,
    pub comul: Map1,
    pub counit: ScalarMap,
    pub antipode: Map1,
    pub antipode_inv: Map1,
}

impl HopfData {
    pub fn name(&self) -> &str {
        &self.algebra.name
    }

    pub fn basis(&self) -> &Basis {
        &self.algebra.basis
    }

    pub fn is_finite(&self) -> bool {
        self.algebra.is_finite()
    }

    pub fn one(&self) -> FreeVector {
        self.algebra.one()
    }

    pub fn mul(&self, x: &FreeVector, y: &FreeVector) -> FreeVector {
        self.algebra.mul(x, y)
    }

    pub fn coalgebra(&self) -> Coalgebra {
        Coalgebra { basis: self.algebra.basis.clone(), comul: self.comul.clone(), counit: self.counit.clone() }
    }

    pub fn delta(&self, v: &FreeVector) -> FreeVector {
        v.map_linear(|i| (self.comul)(i))
    }

    pub fn delta_idx(&self, i: &BasisIndex) -> FreeVector {
        (self.comul)(i)
    }

    /// h1 ⊗ h2 ⊗ h3 as triples.
    pub fn delta2_idx(&self, i: &BasisIndex) -> FreeVector {
        (self.comul)(i).map_factor(0, 2, |x| (self.comul)(x))
    }

    pub fn delta2(&self, v: &FreeVector) -> FreeVector {
        v.map_linear(|i| self.delta2_idx(i))
    }

    pub fn eps(&self, v: &FreeVector) -> CycScalar {
        v.functional(|i| (self.counit)(i))
    }

    pub fn eps_idx(&self, i: &BasisIndex) -> CycScalar {
        (self.counit)(i)
    }

    pub fn s(&self, v: &FreeVector) -> FreeVector {
        v.map_linear(|i| (self.antipode)(i))
    }

    pub fn s_inv(&self, v: &FreeVector) -> FreeVector {
        v.map_linear(|i| (self.antipode_inv)(i))
    }

    /// Multiplies the two factors of every pair term, after applying `f`
    /// and `g` to the left and right factors.
    pub fn mul_pairs(
        &self,
        v: &FreeVector,
        f: impl Fn(&BasisIndex) -> FreeVector,
        g: impl Fn(&BasisIndex) -> FreeVector,
    ) -> FreeVector {
        v.map_linear(|p| {
            let (a, b) = p.split2();
            self.mul(&f(a), &g(b))
        })
    }

    /// Returns a copy with the antipode replaced (used for mutation tests).
    pub fn with_antipode(&self, antipode: Map1) -> HopfData {
        HopfData { antipode, ..self.clone() }
    }
}

/// Inverts a linear map on a finite basis by solving for each basis vector.
pub fn invert_on_basis(basis: &[BasisIndex], f: &Map1) -> Result<BTreeMap<BasisIndex, FreeVector>, HopfError> {
    let sys = LinearSystem::from_images(basis, |i| f(i));
    basis
        .iter()
        .map(|b| {
            sys.solve(&FreeVector::basis(b.clone()))
                .map(|x| (b.clone(), x))
                .ok_or_else(|| HopfError::NotInvertible(b.to_string()))
        })
        .collect()
}

pub fn table_map(name: &'static str, table: BTreeMap<BasisIndex, FreeVector>) -> Map1 {
    map1(move |i| table.get(i).cloned().unwrap_or_else(|| panic!("{i} is outside the basis of {name}")))
}

/// Per-axiom report for a Hopf algebra; exhaustive on finite bases and on
/// the window otherwise.
pub fn check_hopf_axioms(h: &HopfData, window: i64) -> CheckReport {
    let mut report = check_algebra(&h.algebra, window);
    let scope = h.algebra.scope(window);
    let els = h.algebra.elements(window);
    let hh = h.algebra.tensor(&h.algebra);

    report.check("coassociativity", scope, els.iter(), |x| {
        let d = h.delta_idx(x);
        mismatch(x, &d.map_factor(0, 2, |y| h.delta_idx(y)), &d.map_factor(1, 2, |y| h.delta_idx(y)))
    });
    report.check("counit", scope, els.iter(), |x| {
        let d = h.delta_idx(x);
        let v = FreeVector::basis((*x).clone());
        let left = d.map_terms(|f| FreeVector::basis(f[1].clone()).scale(&h.eps_idx(f[0])));
        let right = d.map_terms(|f| FreeVector::basis(f[0].clone()).scale(&h.eps_idx(f[1])));
        mismatch(x, &left, &v).or_else(|| mismatch(x, &right, &v))
    });
    let pairs: Vec<_> = els.iter().flat_map(|x| els.iter().map(move |y| (x, y))).collect();
    report.check("comul-multiplicative", scope, pairs.iter(), |(x, y)| {
        let lhs = h.delta(&h.algebra.mul_idx(x, y));
        let rhs = hh.mul(&h.delta_idx(x), &h.delta_idx(y));
        mismatch(format!("({x}, {y})"), &lhs, &rhs)
    });
    report.check("counit-multiplicative", scope, pairs.iter(), |(x, y)| {
        let lhs = h.eps(&h.algebra.mul_idx(x, y));
        let rhs = h.eps_idx(x).mul(&h.eps_idx(y));
        (lhs != rhs).then(|| format!("at ({x}, {y}): {lhs} vs {rhs}"))
    });
    report.check("unit-compatibility", scope, [()], |_| {
        let one = h.one();
        mismatch("1", &h.delta(&one), &one.tensor(&one))
            .or_else(|| (!h.eps(&one).is_one()).then(|| "ε(1) ≠ 1".to_string()))
    });
    report.check("antipode", scope, els.iter(), |x| {
        let d = h.delta_idx(x);
        let target = h.one().scale(&h.eps_idx(x));
        let left = h.mul_pairs(&d, |a| (h.antipode)(a), |b| FreeVector::basis(b.clone()));
        let right = h.mul_pairs(&d, |a| FreeVector::basis(a.clone()), |b| (h.antipode)(b));
        mismatch(format!("{x} (S⊗Id)"), &left, &target).or_else(|| mismatch(format!("{x} (Id⊗S)"), &right, &target))
    });
    report.check("antipode-inverse", scope, els.iter(), |x| {
        let v = FreeVector::basis((*x).clone());
        mismatch(x, &h.s_inv(&h.s(&v)), &v).or_else(|| mismatch(x, &h.s(&h.s_inv(&v)), &v))
    });
    report
}
