use std::sync::Arc;

use crate::linalg::{Basis, BasisIndex, FreeVector, LinOp, Map2};
use crate::report::{mismatch, triple_window, CheckReport, Scope};

/// An associative unital algebra given by a basis, a bilinear product on
/// basis indices and the unit vector.
#[derive(Clone)]
pub struct AlgebraPresentation {
    pub name: String,
    pub basis: Basis,
    pub mult: Map2,
    pub unit: FreeVector,
}

impl AlgebraPresentation {
    pub fn new(
        name: impl Into<String>,
        basis: Basis,
        mult: impl Fn(&BasisIndex, &BasisIndex) -> FreeVector + Send + Sync + 'static,
        unit: FreeVector,
    ) -> Self {
        AlgebraPresentation { name: name.into(), basis, mult: Arc::new(mult), unit }
    }

    pub fn is_finite(&self) -> bool {
        self.basis.is_finite()
    }

    pub fn one(&self) -> FreeVector {
        self.unit.clone()
    }

    pub fn mul_idx(&self, i: &BasisIndex, j: &BasisIndex) -> FreeVector {
        (self.mult)(i, j)
    }

    pub fn mul(&self, x: &FreeVector, y: &FreeVector) -> FreeVector {
        x.bilinear(y, |i, j| (self.mult)(i, j))
    }

    pub fn mul3(&self, x: &FreeVector, y: &FreeVector, z: &FreeVector) -> FreeVector {
        self.mul(&self.mul(x, y), z)
    }

    /// Product of a list of factors (the unit for an empty list).
    pub fn product(&self, factors: &[FreeVector]) -> FreeVector {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, x: &FreeVector, e: u32) -> FreeVector {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    pub fn elements(&self, window: i64) -> Vec<BasisIndex> {
        self.basis.enumerate(window)
    }

    pub fn scope(&self, window: i64) -> Scope {
        Scope::for_basis(self.is_finite(), window)
    }

    pub fn left_mult(&self, x: FreeVector) -> LinOp {
        let a = self.clone();
        LinOp::new(move |i| a.mul(&x, &FreeVector::basis(i.clone())))
    }

    pub fn right_mult(&self, x: FreeVector) -> LinOp {
        let a = self.clone();
        LinOp::new(move |i| a.mul(&FreeVector::basis(i.clone()), &x))
    }

    /// Tensor product algebra on pair indices, multiplied factorwise.
    pub fn tensor(&self, other: &AlgebraPresentation) -> AlgebraPresentation {
        let (a, b) = (self.clone(), other.clone());
        AlgebraPresentation::new(
            format!("{}⊗{}", self.name, other.name),
            Basis::product(&self.basis, &other.basis),
            move |i, j| {
                let (i1, i2) = i.split2();
                let (j1, j2) = j.split2();
                a.mul_idx(i1, j1).tensor(&b.mul_idx(i2, j2))
            },
            self.unit.tensor(&other.unit),
        )
    }
}

/// Associativity on basis triples and two-sided unit law on basis elements.
pub fn check_algebra(a: &AlgebraPresentation, window: i64) -> CheckReport {
    let mut report = CheckReport::new();
    let tw = triple_window(window);
    let els = a.elements(window);
    let small = a.elements(tw);
    let s = &small;
    let triples: Vec<_> = s.iter().flat_map(|x| s.iter().flat_map(move |y| s.iter().map(move |z| (x, y, z)))).collect();
    report.check("associativity", a.scope(tw), triples, |(x, y, z)| {
        let (x, y, z) =
            (FreeVector::basis((*x).clone()), FreeVector::basis((*y).clone()), FreeVector::basis((*z).clone()));
        mismatch(format!("({x}, {y}, {z})"), &a.mul(&a.mul(&x, &y), &z), &a.mul(&x, &a.mul(&y, &z)))
    });
    report.check("unit", a.scope(window), els, |x| {
        let v = FreeVector::basis(x.clone());
        mismatch(x, &a.mul(&a.one(), &v), &v).or_else(|| mismatch(x, &a.mul(&v, &a.one()), &v))
    });
    report
}
