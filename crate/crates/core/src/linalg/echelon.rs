use std::collections::{BTreeMap, BTreeSet};

use super::index::BasisIndex;
use super::op::LinOp;
use super::vector::FreeVector;
use crate::scalars::CycScalar;

/// Span of a set of vectors, kept in reduced row echelon form. The pivot of
/// a row is its smallest index; pivot coefficients are 1 and no row has a
/// nonzero entry at another row's pivot.
#[derive(Clone, Debug, Default)]
pub struct Subspace {
    generators: Vec<FreeVector>,
    rows: BTreeMap<BasisIndex, FreeVector>,
}

impl Subspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn spanned_by<'a>(vectors: impl IntoIterator<Item = &'a FreeVector>) -> Self {
        let mut s = Self::new();
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    /// Span of the given basis indices.
    pub fn coordinate(indices: impl IntoIterator<Item = BasisIndex>) -> Self {
        let mut s = Self::new();
        for i in indices {
            s.insert(FreeVector::basis(i));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> &[FreeVector] {
        &self.generators
    }

    /// Reduced echelon basis ordered by pivot.
    pub fn basis(&self) -> impl Iterator<Item = &FreeVector> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &BasisIndex> {
        self.rows.keys()
    }

    pub fn row(&self, pivot: &BasisIndex) -> Option<&FreeVector> {
        self.rows.get(pivot)
    }

    /// Normal form of `v` modulo the subspace: zero at every pivot.
    pub fn reduce(&self, v: &FreeVector) -> FreeVector {
        let mut out = v.clone();
        for (i, c) in v.iter() {
            if let Some(row) = self.rows.get(i) {
                out.add_scaled(row, &c.neg());
            }
        }
        out
    }

    pub fn contains(&self, v: &FreeVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: FreeVector) -> bool {
        let r = self.reduce(&v);
        self.generators.push(v);
        let Some((p, c)) = r.leading() else { return false };
        let p = p.clone();
        let r = r.scale(&c.inv().expect("nonzero leading coefficient"));
        for row in self.rows.values_mut() {
            let c = row.coeff(&p);
            if !c.is_zero() {
                row.add_scaled(&r, &c.neg());
            }
        }
        self.rows.insert(p, r);
        true
    }

    /// Coordinates of `v` in the echelon basis, keyed by pivot, when `v`
    /// lies in the span.
    pub fn coords(&self, v: &FreeVector) -> Option<FreeVector> {
        if !self.contains(v) {
            return None;
        }
        Some(v.filter(|i| self.rows.contains_key(i)))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().all(|v| self.contains(v))
    }

    pub fn same_span(&self, other: &Subspace) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        let mut sum = self.clone();
        for v in other.basis() {
            sum.insert(v.clone());
        }
        self.dim() + other.dim() - sum.dim()
    }

    /// Indices touched by the echelon rows.
    pub fn support(&self) -> BTreeSet<BasisIndex> {
        self.rows.values().flat_map(|r| r.indices().cloned()).collect()
    }
}

const IMG: &str = "#0";
const DOM: &str = "#1";

/// Row reduction of the augmented system `[f(e_i) | e_i]` over a finite
/// domain. Gives kernel, image and particular solutions in one pass.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    domain: Vec<BasisIndex>,
    echelon: Subspace,
}

impl LinearSystem {
    pub fn new(f: &LinOp, domain: &[BasisIndex]) -> Self {
        Self::from_images(domain, |i| f.on_basis(i))
    }

    pub fn from_images(domain: &[BasisIndex], mut f: impl FnMut(&BasisIndex) -> FreeVector) -> Self {
        let mut echelon = Subspace::new();
        for i in domain {
            let mut row = f(i).wrap(IMG);
            row.add_term(BasisIndex::wrap(DOM, std::slice::from_ref(i)), CycScalar::one());
            echelon.insert(row);
        }
        LinearSystem { domain: domain.to_vec(), echelon }
    }

    pub fn domain(&self) -> &[BasisIndex] {
        &self.domain
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::spanned_by(
            self.echelon
                .rows
                .iter()
                .filter(|(p, _)| p.tag() == DOM)
                .map(|(_, r)| r.unwrap_tag(DOM))
                .collect::<Vec<_>>()
                .iter(),
        )
    }

    pub fn image(&self) -> Subspace {
        Subspace::spanned_by(
            self.echelon
                .rows
                .iter()
                .filter(|(p, _)| p.tag() == IMG)
                .map(|(_, r)| r.unwrap_tag(IMG))
                .collect::<Vec<_>>()
                .iter(),
        )
    }

    pub fn rank(&self) -> usize {
        self.echelon.rows.keys().filter(|p| p.tag() == IMG).count()
    }

    /// Some preimage of `target`, or `None` when it is not in the image.
    pub fn solve(&self, target: &FreeVector) -> Option<FreeVector> {
        let r = self.echelon.reduce(&target.wrap(IMG));
        if r.iter().any(|(i, _)| i.tag() == IMG) {
            return None;
        }
        Some(r.unwrap_tag(DOM).neg())
    }
}

/// Exact kernel and image of `f` on a finite domain.
pub fn kernel_image(f: &LinOp, domain: &[BasisIndex]) -> (Subspace, Subspace) {
    let sys = LinearSystem::new(f, domain);
    (sys.kernel(), sys.image())
}

/// A solution `x` of `f(x) = target` supported on `domain`, verified by
/// re-application, or `None`.
pub fn solve_linear(f: &LinOp, target: &FreeVector, domain: &[BasisIndex]) -> Option<FreeVector> {
    let x = LinearSystem::new(f, domain).solve(target)?;
    assert_eq!(&f.apply(&x), target, "linear solve failed re-application");
    Some(x)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("subspace vector {0} leaves the ambient span")]
pub struct NotContained(pub String);

/// Quotient of the span of `ambient` by `sub`: representatives are the
/// non-pivot ambient indices and projection is reduction modulo `sub`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub representatives: Vec<BasisIndex>,
    pub sub: Subspace,
}

impl Quotient {
    pub fn project(&self, v: &FreeVector) -> FreeVector {
        self.sub.reduce(v)
    }

    pub fn project_op(&self) -> LinOp {
        let sub = self.sub.clone();
        LinOp::new(move |i| sub.reduce(&FreeVector::basis(i.clone()))).with_domain(self.representatives.clone())
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

pub fn quotient_basis(ambient: &[BasisIndex], sub: &Subspace) -> Result<Quotient, NotContained> {
    let amb: BTreeSet<&BasisIndex> = ambient.iter().collect();
    for row in sub.basis() {
        if row.indices().any(|i| !amb.contains(i)) {
            return Err(NotContained(row.to_string()));
        }
    }
    let representatives = ambient.iter().filter(|i| sub.row(i).is_none()).cloned().collect();
    Ok(Quotient { representatives, sub: sub.clone() })
}

/// A subquotient `numerator / denominator` inside a common ambient space,
/// with an explicit basis of normal forms. Coordinates are read off at the
/// pivots of that basis.
#[derive(Clone, Debug)]
pub struct Subquotient {
    denominator: Subspace,
    classes: Subspace,
}

impl Subquotient {
    /// `denominator` must lie inside the span of `numerator`.
    pub fn new<'a>(numerator: impl IntoIterator<Item = &'a FreeVector>, denominator: Subspace) -> Self {
        let mut classes = Subspace::new();
        for v in numerator {
            classes.insert(denominator.reduce(v));
        }
        Subquotient { denominator, classes }
    }

    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    /// Labels of the class basis (the pivots of its normal forms).
    pub fn labels(&self) -> Vec<BasisIndex> {
        self.classes.pivots().cloned().collect()
    }

    /// A representative of the class labelled `label`.
    pub fn lift(&self, label: &BasisIndex) -> FreeVector {
        self.classes.row(label).cloned().unwrap_or_else(|| panic!("{label} is not a class label"))
    }

    /// Class coordinates of an element of the numerator.
    pub fn coords(&self, v: &FreeVector) -> Option<FreeVector> {
        self.classes.coords(&self.denominator.reduce(v))
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: i64) -> BasisIndex {
        BasisIndex::new("e", &[i])
    }

    fn dom(n: i64) -> Vec<BasisIndex> {
        (0..n).map(e).collect()
    }

    #[test]
    fn zero_and_identity_maps() {
        let (k, i) = kernel_image(&LinOp::zero(), &dom(3));
        assert_eq!((k.dim(), i.dim()), (3, 0));
        let (k, _) = kernel_image(&LinOp::identity(), &dom(3));
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn solve_identity_and_zero() {
        let v = FreeVector::from_terms([(e(0), CycScalar::from_int(2)), (e(2), CycScalar::from_int(-1))]);
        assert_eq!(solve_linear(&LinOp::identity(), &v, &dom(3)), Some(v.clone()));
        assert_eq!(solve_linear(&LinOp::zero(), &v, &dom(3)), None);
    }

    #[test]
    fn quotient_edge_cases() {
        let q = quotient_basis(&dom(3), &Subspace::new()).unwrap();
        assert_eq!(q.representatives, dom(3));
        let q = quotient_basis(&dom(3), &Subspace::coordinate(dom(3))).unwrap();
        assert!(q.representatives.is_empty());
        assert!(quotient_basis(&dom(2), &Subspace::coordinate([e(5)])).is_err());
    }

    fn random_op(entries: Vec<i64>) -> LinOp {
        LinOp::new(move |i| {
            let k = i.int(0) as usize;
            FreeVector::from_terms((0..3).map(|r| (e(r as i64), CycScalar::from_int(entries[k * 3 + r]))))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in prop::collection::vec(-2i64..3, 12)) {
            let f = random_op(entries);
            let (k, i) = kernel_image(&f, &dom(4));
            prop_assert_eq!(k.dim() + i.dim(), 4);
            for v in k.basis() {
                prop_assert!(f.apply(v).is_zero());
            }
        }

        #[test]
        fn solutions_reapply(entries in prop::collection::vec(-2i64..3, 12), x in prop::collection::vec(-3i64..4, 4)) {
            let f = random_op(entries);
            let v = FreeVector::from_terms(x.iter().enumerate().map(|(k, c)| (e(k as i64), CycScalar::from_int(*c))));
            let target = f.apply(&v);
            let sol = solve_linear(&f, &target, &dom(4)).expect("target is in the image");
            prop_assert_eq!(f.apply(&sol), target);
        }

        #[test]
        fn projection_is_idempotent(gens in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..3), x in prop::collection::vec(-3i64..4, 4)) {
            let vec_of = |cs: &[i64]| FreeVector::from_terms(cs.iter().enumerate().map(|(k, c)| (e(k as i64), CycScalar::from_int(*c))));
            let gens: Vec<FreeVector> = gens.iter().map(|g| vec_of(g)).collect();
            let sub = Subspace::spanned_by(gens.iter());
            let q = quotient_basis(&dom(4), &sub).unwrap();
            prop_assert_eq!(q.dim(), 4 - sub.dim());
            let v = vec_of(&x);
            prop_assert_eq!(q.project(&q.project(&v)), q.project(&v));
            for g in &gens {
                prop_assert!(q.project(g).is_zero());
            }
        }
    }
}
