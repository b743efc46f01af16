use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use super::index::BasisIndex;
use crate::scalars::CycScalar;

/// Finitely supported linear combination of basis indices. Zero
/// coefficients are never stored and terms iterate in index order.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct FreeVector {
    terms: BTreeMap<BasisIndex, CycScalar>,
}

impl FreeVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(idx: BasisIndex) -> Self {
        Self::term(idx, CycScalar::one())
    }

    pub fn term(idx: BasisIndex, c: CycScalar) -> Self {
        let mut v = Self::zero();
        v.add_term(idx, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisIndex, CycScalar)>) -> Self {
        let mut v = Self::zero();
        for (i, c) in terms {
            v.add_term(i, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, idx: &BasisIndex) -> CycScalar {
        self.terms.get(idx).cloned().unwrap_or_else(CycScalar::zero)
    }

    pub fn get(&self, idx: &BasisIndex) -> Option<&CycScalar> {
        self.terms.get(idx)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, BasisIndex, CycScalar> {
        self.terms.iter()
    }

    pub fn indices(&self) -> impl Iterator<Item = &BasisIndex> {
        self.terms.keys()
    }

    /// Smallest index with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&BasisIndex, &CycScalar)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, idx: BasisIndex, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &FreeVector, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.terms {
            self.add_term(i.clone(), x.mul(c));
        }
    }

    pub fn add_assign(&mut self, other: &FreeVector) {
        for (i, x) in &other.terms {
            self.add_term(i.clone(), x.clone());
        }
    }

    pub fn add(&self, other: &FreeVector) -> FreeVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &FreeVector) -> FreeVector {
        let mut out = self.clone();
        out.add_scaled(other, &CycScalar::from_int(-1));
        out
    }

    pub fn neg(&self) -> FreeVector {
        self.scale(&CycScalar::from_int(-1))
    }

    pub fn scale(&self, c: &CycScalar) -> FreeVector {
        if c.is_zero() {
            return Self::zero();
        }
        FreeVector { terms: self.terms.iter().map(|(i, x)| (i.clone(), x.mul(c))).collect() }
    }

    /// Tensor product; indices become pairs.
    pub fn tensor(&self, other: &FreeVector) -> FreeVector {
        let mut out = Self::zero();
        for (i, x) in &self.terms {
            for (j, y) in &other.terms {
                out.add_term(BasisIndex::pair(i, j), x.mul(y));
            }
        }
        out
    }

    /// Tensor product of several vectors, indices become n-fold tensors.
    pub fn tensor_all(parts: &[&FreeVector]) -> FreeVector {
        let mut acc: Vec<(Vec<BasisIndex>, CycScalar)> = vec![(Vec::new(), CycScalar::one())];
        for p in parts {
            let mut next = Vec::new();
            for (idxs, c) in &acc {
                for (i, x) in p.iter() {
                    let mut v = idxs.clone();
                    v.push(i.clone());
                    next.push((v, c.mul(x)));
                }
            }
            acc = next;
        }
        FreeVector::from_terms(acc.into_iter().map(|(v, c)| (BasisIndex::tensor(&v), c)))
    }

    /// Linear extension of a map on basis indices.
    pub fn map_linear(&self, mut f: impl FnMut(&BasisIndex) -> FreeVector) -> FreeVector {
        let mut out = Self::zero();
        for (i, c) in &self.terms {
            out.add_scaled(&f(i), c);
        }
        out
    }

    /// Bilinear extension of a map on pairs of basis indices.
    pub fn bilinear(
        &self,
        other: &FreeVector,
        mut f: impl FnMut(&BasisIndex, &BasisIndex) -> FreeVector,
    ) -> FreeVector {
        let mut out = Self::zero();
        for (i, x) in &self.terms {
            for (j, y) in &other.terms {
                out.add_scaled(&f(i, j), &x.mul(y));
            }
        }
        out
    }

    /// Linear scalar-valued functional.
    pub fn functional(&self, mut f: impl FnMut(&BasisIndex) -> CycScalar) -> CycScalar {
        let mut acc = CycScalar::zero();
        for (i, c) in &self.terms {
            acc = acc.add(&c.mul(&f(i)));
        }
        acc
    }

    /// Applies `f` to tensor factor `pos` of every term. The result of `f` is
    /// spliced in place: with `arity == 1` its indices replace the factor,
    /// otherwise they must be tensors with `arity` factors.
    pub fn map_factor(&self, pos: usize, arity: usize, mut f: impl FnMut(&BasisIndex) -> FreeVector) -> FreeVector {
        let mut out = Self::zero();
        for (i, c) in &self.terms {
            let factors = i.factors();
            let image = f(factors[pos]);
            for (j, y) in image.iter() {
                let mut fs: Vec<BasisIndex> = Vec::with_capacity(factors.len() + arity - 1);
                fs.extend(factors[..pos].iter().map(|x| (*x).clone()));
                if arity == 1 {
                    fs.push(j.clone());
                } else {
                    debug_assert_eq!(j.factors().len(), arity);
                    fs.extend(j.factors().into_iter().cloned());
                }
                fs.extend(factors[pos + 1..].iter().map(|x| (*x).clone()));
                out.add_term(BasisIndex::tensor(&fs), c.mul(y));
            }
        }
        out
    }

    /// Applies a map to whole terms viewed through their tensor factors.
    pub fn map_terms(&self, mut f: impl FnMut(&[&BasisIndex]) -> FreeVector) -> FreeVector {
        self.map_linear(|i| f(&i.factors()))
    }

    /// Wraps every index under a tag (direct-sum injection).
    pub fn wrap(&self, tag: &'static str) -> FreeVector {
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|(i, c)| (BasisIndex::wrap(tag, std::slice::from_ref(i)), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms tagged `tag` and strips the wrapper.
    pub fn unwrap_tag(&self, tag: &str) -> FreeVector {
        FreeVector {
            terms: self
                .terms
                .iter()
                .filter(|(i, _)| i.tag() == tag)
                .map(|(i, c)| (i.idx(0).clone(), c.clone()))
                .collect(),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&BasisIndex) -> bool) -> FreeVector {
        FreeVector { terms: self.terms.iter().filter(|(i, _)| keep(i)).map(|(i, c)| (i.clone(), c.clone())).collect() }
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{i}")?;
            } else {
                write!(f, "({c})*{i}")?;
            }
        }
        Ok(())
    }
}

impl FromIterator<(BasisIndex, CycScalar)> for FreeVector {
    fn from_iter<T: IntoIterator<Item = (BasisIndex, CycScalar)>>(iter: T) -> Self {
        Self::from_terms(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: i64) -> BasisIndex {
        BasisIndex::new("e", &[i])
    }

    #[test]
    fn add_negation_cancels() {
        let v = FreeVector::basis(e(1));
        assert!(v.add(&v.neg()).is_zero());
    }

    #[test]
    fn tensor_of_basis_vectors() {
        let t = FreeVector::basis(e(1)).tensor(&FreeVector::basis(e(2)));
        assert_eq!(t, FreeVector::basis(BasisIndex::pair(&e(1), &e(2))));
    }

    #[test]
    fn scale_by_zero() {
        let v = FreeVector::from_terms([(e(0), CycScalar::from_int(3)), (e(4), CycScalar::from_int(-1))]);
        assert!(v.scale(&CycScalar::zero()).is_zero());
    }

    #[test]
    fn map_factor_splices() {
        // (e0 ⊗ e1) with e1 -> e1 ⊗ e1 + e2 ⊗ e0
        let v = FreeVector::basis(BasisIndex::pair(&e(0), &e(1)));
        let w = v.map_factor(1, 2, |i| {
            FreeVector::basis(BasisIndex::pair(i, i)).add(&FreeVector::basis(BasisIndex::pair(&e(2), &e(0))))
        });
        let expect = FreeVector::basis(BasisIndex::tensor(&[e(0), e(1), e(1)]))
            .add(&FreeVector::basis(BasisIndex::tensor(&[e(0), e(2), e(0)])));
        assert_eq!(w, expect);
    }
}
