use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::AlgebraPresentation;
use super::hopf_data::{table_map, HopfData};
use super::HopfError;
use crate::linalg::{map1, Basis, BasisIndex, FreeVector};
use crate::scalars::CycScalar;

pub fn group_index(i: usize) -> BasisIndex {
    BasisIndex::new("g", &[i as i64])
}

/// Multiplication table of the cyclic group Z/n.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// Group algebra of a finite group given by its Cayley table: Δg = g⊗g,
/// ε(g) = 1, S(g) = g⁻¹.
pub fn build_group_algebra(name: &str, cayley: &[Vec<usize>]) -> Result<HopfData, HopfError> {
    let n = cayley.len();
    if n == 0 {
        return Err(HopfError::InvalidGroup("empty table".into()));
    }
    for (i, row) in cayley.iter().enumerate() {
        if row.len() != n || row.iter().any(|&k| k >= n) {
            return Err(HopfError::InvalidGroup(format!("row {i} is not a map into the group")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]] {
                    return Err(HopfError::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|g| cayley[e][g] == g && cayley[g][e] == g))
        .ok_or_else(|| HopfError::InvalidGroup("no identity element".into()))?;
    let mut inverse = vec![0; n];
    for (g, inv) in inverse.iter_mut().enumerate() {
        *inv = (0..n)
            .find(|&h| cayley[g][h] == e && cayley[h][g] == e)
            .ok_or_else(|| HopfError::InvalidGroup(format!("element {g} has no inverse")))?;
    }
    let table = Arc::new(cayley.to_vec());
    let basis = Basis::finite((0..n).map(group_index).collect());
    let algebra = AlgebraPresentation::new(
        name,
        basis,
        move |i, j| FreeVector::basis(group_index(table[i.int(0) as usize][j.int(0) as usize])),
        FreeVector::basis(group_index(e)),
    );
    let inv = Arc::new(inverse);
    let inv2 = inv.clone();
    Ok(HopfData {
        algebra,
        comul: map1(|i| FreeVector::basis(BasisIndex::pair(i, i))),
        counit: Arc::new(|_| CycScalar::one()),
        antipode: map1(move |i| FreeVector::basis(group_index(inv[i.int(0) as usize]))),
        antipode_inv: map1(move |i| FreeVector::basis(group_index(inv2[i.int(0) as usize]))),
    })
}

pub fn laurent_index(n: i64) -> BasisIndex {
    BasisIndex::new("t", &[n])
}

/// The Laurent polynomial Hopf algebra k[t, t⁻¹] with t group-like.
pub fn build_laurent_hopf() -> HopfData {
    let algebra = AlgebraPresentation::new(
        "k[t,t⁻¹]",
        Basis::lattice(1, |p| laurent_index(p[0])),
        |i, j| FreeVector::basis(laurent_index(i.int(0) + j.int(0))),
        FreeVector::basis(laurent_index(0)),
    );
    HopfData {
        algebra,
        comul: map1(|i| FreeVector::basis(BasisIndex::pair(i, i))),
        counit: Arc::new(|_| CycScalar::one()),
        antipode: map1(|i| FreeVector::basis(laurent_index(-i.int(0)))),
        antipode_inv: map1(|i| FreeVector::basis(laurent_index(-i.int(0)))),
    }
}

/// Basis index of a monomial in a Laurent polynomial ring with one variable
/// named by `tag`.
pub fn laurent_ring(name: &str, tag: &'static str) -> AlgebraPresentation {
    AlgebraPresentation::new(
        name,
        Basis::lattice(1, move |p| BasisIndex::new(tag, &[p[0]])),
        move |i, j| FreeVector::basis(BasisIndex::new(tag, &[i.int(0) + j.int(0)])),
        FreeVector::basis(BasisIndex::new(tag, &[0])),
    )
}

/// Table-backed Hopf algebra from explicit finite data.
pub fn finite_hopf(
    algebra: AlgebraPresentation,
    comul: BTreeMap<BasisIndex, FreeVector>,
    counit: BTreeMap<BasisIndex, CycScalar>,
    antipode: BTreeMap<BasisIndex, FreeVector>,
    antipode_inv: BTreeMap<BasisIndex, FreeVector>,
) -> HopfData {
    HopfData {
        algebra,
        comul: table_map("comultiplication", comul),
        counit: Arc::new(move |i| counit.get(i).cloned().unwrap_or_else(CycScalar::zero)),
        antipode: table_map("antipode", antipode),
        antipode_inv: table_map("inverse antipode", antipode_inv),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_hopf_axioms;

    #[test]
    fn c2_group_algebra() {
        let h = build_group_algebra("C2", &cyclic_table(2)).unwrap();
        assert!(check_hopf_axioms(&h, 0).passed());
        assert_eq!((h.antipode)(&group_index(1)), FreeVector::basis(group_index(1)));
    }

    #[test]
    fn trivial_group_is_the_ground_field() {
        let h = build_group_algebra("C1", &cyclic_table(1)).unwrap();
        assert_eq!(h.algebra.elements(0).len(), 1);
        assert!(check_hopf_axioms(&h, 0).passed());
    }

    #[test]
    fn counit_of_group_sum() {
        let h = build_group_algebra("C4", &cyclic_table(4)).unwrap();
        let sum = FreeVector::from_terms((0..4).map(|i| (group_index(i), CycScalar::one())));
        assert_eq!(h.eps(&sum), CycScalar::from_int(4));
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let bad = vec![vec![0, 1], vec![0, 1]];
        assert!(build_group_algebra("bad", &bad).is_err());
    }

    #[test]
    fn laurent_structure() {
        let h = build_laurent_hopf();
        assert_eq!((h.antipode)(&laurent_index(3)), FreeVector::basis(laurent_index(-3)));
        let one = FreeVector::basis(laurent_index(0));
        assert_eq!(h.delta(&one), one.tensor(&one));
        let t2 = FreeVector::basis(laurent_index(2));
        let tm2 = FreeVector::basis(laurent_index(-2));
        assert_eq!(h.mul(&t2, &tm2), one);
        assert!(check_hopf_axioms(&h, 3).passed());
    }
}
