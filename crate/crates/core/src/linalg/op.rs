use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use super::index::BasisIndex;
use super::vector::FreeVector;
use crate::scalars::CycScalar;

/// Computable linear structure map on basis indices.
pub type Map1 = Arc<dyn Fn(&BasisIndex) -> FreeVector + Send + Sync>;
/// Computable bilinear structure map on pairs of basis indices.
pub type Map2 = Arc<dyn Fn(&BasisIndex, &BasisIndex) -> FreeVector + Send + Sync>;
/// Computable scalar-valued linear functional on basis indices.
pub type ScalarMap = Arc<dyn Fn(&BasisIndex) -> CycScalar + Send + Sync>;

pub fn map1(f: impl Fn(&BasisIndex) -> FreeVector + Send + Sync + 'static) -> Map1 {
    Arc::new(f)
}

pub fn map2(f: impl Fn(&BasisIndex, &BasisIndex) -> FreeVector + Send + Sync + 'static) -> Map2 {
    Arc::new(f)
}

/// Dense exact matrix with labelled rows (codomain) and columns (domain).
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub rows: Vec<BasisIndex>,
    pub cols: Vec<BasisIndex>,
    pub entries: Vec<Vec<CycScalar>>,
}

impl Matrix {
    /// Multiplies by the coordinate vector of `v` (indices outside the
    /// column labels are rejected).
    pub fn apply(&self, v: &FreeVector) -> FreeVector {
        let mut out = FreeVector::zero();
        for (j, col) in self.cols.iter().enumerate() {
            let c = v.coeff(col);
            if c.is_zero() {
                continue;
            }
            for (i, row) in self.rows.iter().enumerate() {
                out.add_term(row.clone(), self.entries[i][j].mul(&c));
            }
        }
        out
    }

    /// Entries as strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
    }
}

/// A linear operator given by its action on basis indices, optionally with
/// a finite domain for which the exact matrix is cached on demand.
#[derive(Clone)]
pub struct LinOp {
    action: Map1,
    domain: Option<Arc<Vec<BasisIndex>>>,
    matrix: Arc<OnceLock<Matrix>>,
}

impl LinOp {
    pub fn new(f: impl Fn(&BasisIndex) -> FreeVector + Send + Sync + 'static) -> Self {
        Self::from_map(Arc::new(f))
    }

    pub fn from_map(action: Map1) -> Self {
        LinOp { action, domain: None, matrix: Arc::new(OnceLock::new()) }
    }

    pub fn with_domain(mut self, domain: Vec<BasisIndex>) -> Self {
        self.domain = Some(Arc::new(domain));
        self.matrix = Arc::new(OnceLock::new());
        self
    }

    pub fn identity() -> Self {
        Self::new(|i| FreeVector::basis(i.clone()))
    }

    pub fn zero() -> Self {
        Self::new(|_| FreeVector::zero())
    }

    pub fn domain(&self) -> Option<&[BasisIndex]> {
        self.domain.as_deref().map(Vec::as_slice)
    }

    pub fn action(&self) -> &Map1 {
        &self.action
    }

    pub fn on_basis(&self, i: &BasisIndex) -> FreeVector {
        (self.action)(i)
    }

    pub fn apply(&self, v: &FreeVector) -> FreeVector {
        v.map_linear(|i| (self.action)(i))
    }

    /// Exact matrix over the finite domain; rows are the sorted union of
    /// the images' supports. `None` without a domain.
    pub fn matrix(&self) -> Option<&Matrix> {
        let domain = self.domain.as_ref()?;
        Some(self.matrix.get_or_init(|| {
            let images: Vec<FreeVector> = domain.iter().map(|i| (self.action)(i)).collect();
            let rows: Vec<BasisIndex> =
                images.iter().flat_map(|v| v.indices().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
            let entries = rows.iter().map(|r| images.iter().map(|v| v.coeff(r)).collect()).collect();
            Matrix { rows, cols: domain.as_ref().clone(), entries }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: i64) -> BasisIndex {
        BasisIndex::new("e", &[i])
    }

    fn shear() -> LinOp {
        LinOp::new(|i| {
            let k = i.int(0);
            FreeVector::basis(e(k)).add(&FreeVector::term(e((k + 1) % 4), CycScalar::from_int(k + 2)))
        })
        .with_domain((0..4).map(e).collect())
    }

    proptest! {
        #[test]
        fn matrix_cache_agrees_with_action(cs in prop::collection::vec(-5i64..6, 4)) {
            let f = shear();
            let v = FreeVector::from_terms(cs.iter().enumerate().map(|(k, c)| (e(k as i64), CycScalar::from_int(*c))));
            prop_assert_eq!(f.matrix().unwrap().apply(&v), f.apply(&v));
        }

        #[test]
        fn apply_is_linear(a in prop::collection::vec(-5i64..6, 4), b in prop::collection::vec(-5i64..6, 4), c in -4i64..5) {
            let f = shear();
            let vec_of = |cs: &[i64]| FreeVector::from_terms(cs.iter().enumerate().map(|(k, x)| (e(k as i64), CycScalar::from_int(*x))));
            let (v, w) = (vec_of(&a), vec_of(&b));
            let c = CycScalar::from_int(c);
            prop_assert_eq!(f.apply(&v.add(&w)), f.apply(&v).add(&f.apply(&w)));
            prop_assert_eq!(f.apply(&v.scale(&c)), f.apply(&v).scale(&c));
        }
    }
}
