use std::fmt;
use std::sync::Arc;

/// One component of a basis-index key.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Key {
    Int(i64),
    Idx(BasisIndex),
}

/// Opaque label of a basis vector: a family tag plus a key of integers and
/// nested indices. Ordering is lexicographic on (tag, key).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisIndex {
    tag: &'static str,
    key: Arc<[Key]>,
}

pub const TENSOR_TAG: &str = "⊗";

impl BasisIndex {
    pub fn new(tag: &'static str, ints: &[i64]) -> Self {
        BasisIndex { tag, key: ints.iter().map(|&i| Key::Int(i)).collect() }
    }

    pub fn from_keys(tag: &'static str, key: Vec<Key>) -> Self {
        BasisIndex { tag, key: key.into() }
    }

    /// An index wrapping other indices under a tag, e.g. a direct-sum summand.
    pub fn wrap(tag: &'static str, inner: &[BasisIndex]) -> Self {
        BasisIndex { tag, key: inner.iter().cloned().map(Key::Idx).collect() }
    }

    /// Pure tensor of basis indices. Never flattens nested tensors.
    pub fn tensor(factors: &[BasisIndex]) -> Self {
        Self::wrap(TENSOR_TAG, factors)
    }

    pub fn pair(a: &BasisIndex, b: &BasisIndex) -> Self {
        Self::tensor(&[a.clone(), b.clone()])
    }

    pub fn tag(&self) -> &'static str {
        self.tag
    }

    pub fn key(&self) -> &[Key] {
        &self.key
    }

    pub fn is_tensor(&self) -> bool {
        self.tag == TENSOR_TAG
    }

    /// Integer key component `i`; panics when absent.
    pub fn int(&self, i: usize) -> i64 {
        match &self.key[i] {
            Key::Int(v) => *v,
            Key::Idx(_) => panic!("key component {i} of {self} is not an integer"),
        }
    }

    /// Nested index component `i`; panics when absent.
    pub fn idx(&self, i: usize) -> &BasisIndex {
        match &self.key[i] {
            Key::Idx(v) => v,
            Key::Int(_) => panic!("key component {i} of {self} is not an index"),
        }
    }

    /// Tensor factors of a tensor index.
    pub fn factors(&self) -> Vec<&BasisIndex> {
        debug_assert!(self.is_tensor(), "{self} is not a tensor index");
        (0..self.key.len()).map(|i| self.idx(i)).collect()
    }

    pub fn split2(&self) -> (&BasisIndex, &BasisIndex) {
        debug_assert!(self.is_tensor() && self.key.len() == 2, "{self} is not a pair");
        (self.idx(0), self.idx(1))
    }

    pub fn split3(&self) -> (&BasisIndex, &BasisIndex, &BasisIndex) {
        debug_assert!(self.is_tensor() && self.key.len() == 3, "{self} is not a triple");
        (self.idx(0), self.idx(1), self.idx(2))
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Int(i) => write!(f, "{i}"),
            Key::Idx(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_tensor() {
            write!(f, "(")?;
            for (i, k) in self.key.iter().enumerate() {
                if i > 0 {
                    write!(f, " ⊗ ")?;
                }
                write!(f, "{k}")?;
            }
            return write!(f, ")");
        }
        write!(f, "{}", self.tag)?;
        if !self.key.is_empty() {
            write!(f, "[")?;
            for (i, k) in self.key.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{k}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

type Enumerator = Arc<dyn Fn(i64) -> Vec<BasisIndex> + Send + Sync>;

/// A basis: either a finite list or a family enumerated on an exponent window.
#[derive(Clone)]
pub struct Basis {
    finite: bool,
    enumerate: Enumerator,
}

impl Basis {
    pub fn finite(mut elems: Vec<BasisIndex>) -> Self {
        elems.sort();
        elems.dedup();
        let elems = Arc::new(elems);
        Basis { finite: true, enumerate: Arc::new(move |_| elems.as_ref().clone()) }
    }

    pub fn empty() -> Self {
        Self::finite(Vec::new())
    }

    /// Z^rank-indexed family; the window keeps exponents in [-w, w].
    pub fn lattice(rank: usize, make: impl Fn(&[i64]) -> BasisIndex + Send + Sync + 'static) -> Self {
        Basis {
            finite: false,
            enumerate: Arc::new(move |w| {
                let mut out = Vec::new();
                let mut point = vec![-w; rank];
                if rank == 0 {
                    return vec![make(&point)];
                }
                loop {
                    out.push(make(&point));
                    let mut i = rank;
                    loop {
                        if i == 0 {
                            out.sort();
                            return out;
                        }
                        i -= 1;
                        if point[i] < w {
                            point[i] += 1;
                            break;
                        }
                        point[i] = -w;
                    }
                }
            }),
        }
    }

    pub fn custom(finite: bool, f: impl Fn(i64) -> Vec<BasisIndex> + Send + Sync + 'static) -> Self {
        Basis {
            finite,
            enumerate: Arc::new(move |w| {
                let mut v = f(w);
                v.sort();
                v.dedup();
                v
            }),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// Sorted basis elements; the window is ignored for finite bases.
    pub fn enumerate(&self, window: i64) -> Vec<BasisIndex> {
        (self.enumerate)(window)
    }

    /// All elements of a finite basis; panics for windowed families.
    pub fn elements(&self) -> Vec<BasisIndex> {
        assert!(self.finite, "basis is infinite; a window is required");
        (self.enumerate)(0)
    }

    /// Basis of a tensor product, indices `tensor(a, b)`.
    pub fn product(a: &Basis, b: &Basis) -> Basis {
        let (a, b) = (a.clone(), b.clone());
        Basis::custom(a.finite && b.finite, move |w| {
            let bs = b.enumerate(w);
            a.enumerate(w).iter().flat_map(|x| bs.iter().map(move |y| BasisIndex::pair(x, y))).collect()
        })
    }

    /// Disjoint union of bases (indices are assumed distinct already).
    pub fn union(parts: &[Basis]) -> Basis {
        let parts = parts.to_vec();
        let finite = parts.iter().all(|p| p.finite);
        Basis::custom(finite, move |w| parts.iter().flat_map(|p| p.enumerate(w)).collect())
    }

    /// Re-labels every element (e.g. to tag a direct-sum summand).
    pub fn map(&self, f: impl Fn(&BasisIndex) -> BasisIndex + Send + Sync + 'static) -> Basis {
        let inner = self.clone();
        Basis::custom(self.finite, move |w| inner.enumerate(w).iter().map(&f).collect())
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.finite {
            write!(f, "Basis({} elements)", self.enumerate(0).len())
        } else {
            write!(f, "Basis(windowed)")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_tag_then_key() {
        let a = BasisIndex::new("a", &[5]);
        let b = BasisIndex::new("b", &[0]);
        assert!(a < b);
        assert!(BasisIndex::new("a", &[1, 2]) < BasisIndex::new("a", &[2, 0]));
    }

    #[test]
    fn lattice_window_counts() {
        let b = Basis::lattice(2, |p| BasisIndex::new("uv", p));
        assert_eq!(b.enumerate(1).len(), 9);
        assert_eq!(b.enumerate(4).len(), 81);
        assert!(!b.is_finite());
    }

    #[test]
    fn tensor_display() {
        let t = BasisIndex::pair(&BasisIndex::new("g", &[1]), &BasisIndex::new("g", &[0]));
        assert_eq!(t.to_string(), "(g[1] ⊗ g[0])");
    }
}
