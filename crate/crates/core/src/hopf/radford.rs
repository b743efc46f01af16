//! The pointed Hopf algebras H(r,n,q): generated by a group-like `a` and an
//! (1, a^r)-skew-primitive `x` with a^(rn) = 1, x^n = 0 and xa = q ax.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::AlgebraPresentation;
use super::builders::{build_group_algebra, cyclic_table, group_index};
use super::comodule::ComoduleAlgebra;
use super::hopf_data::{invert_on_basis, table_map, HopfData};
use super::HopfError;
use crate::linalg::{map1, Basis, BasisIndex, FreeVector, LinOp, LinearSystem, Map1};
use crate::scalars::{CycScalar, RootOfUnity};

/// Basis monomial a^l x^m.
pub fn radford_index(l: i64, m: i64) -> BasisIndex {
    BasisIndex::new("ax", &[l, m])
}

#[derive(Clone)]
pub struct Radford {
    pub r: u32,
    pub n: u32,
    pub q: RootOfUnity,
    pub hopf: HopfData,
    /// The subalgebra spanned by a^(lr) x^m.
    pub h1: AlgebraPresentation,
    /// The quotient group algebra k[C_r].
    pub group: HopfData,
}

impl Radford {
    pub fn order(&self) -> u32 {
        self.r * self.n
    }

    pub fn a_pow(&self, l: i64) -> FreeVector {
        FreeVector::basis(radford_index(l.rem_euclid(self.order() as i64), 0))
    }

    pub fn x(&self) -> FreeVector {
        FreeVector::basis(radford_index(0, 1))
    }

    pub fn monomial(&self, l: i64, m: i64) -> FreeVector {
        FreeVector::basis(radford_index(l.rem_euclid(self.order() as i64), m))
    }

    /// Hopf projection H → k[C_r], a ↦ ā, x ↦ 0.
    pub fn projection(&self) -> LinOp {
        let r = self.r as i64;
        LinOp::new(move |i| {
            if i.int(1) == 0 {
                FreeVector::basis(group_index(i.int(0).rem_euclid(r) as usize))
            } else {
                FreeVector::zero()
            }
        })
    }

    /// Cleaving map k[C_r] → H, ā^i ↦ a^i for 0 ≤ i < r.
    pub fn cleaving(&self) -> Map1 {
        map1(|g| FreeVector::basis(radford_index(g.int(0), 0)))
    }

    /// H as a right k[C_r]-comodule algebra via (Id⊗π)∘Δ.
    pub fn comodule(&self) -> ComoduleAlgebra {
        let (h, pi) = (self.hopf.clone(), self.projection());
        ComoduleAlgebra {
            algebra: self.hopf.algebra.clone(),
            hopf: self.group.clone(),
            coaction: map1(move |i| h.delta_idx(i).map_factor(1, 1, |y| pi.on_basis(y))),
            coinvariants: None,
        }
    }
}

fn radford_mult(big_m: i64, n: i64, q: RootOfUnity) -> impl Fn(&BasisIndex, &BasisIndex) -> FreeVector + Send + Sync {
    // (a^l x^m)(a^k x^s) = q^(mk) a^(l+k) x^(m+s)
    move |i, j| {
        let (l, m) = (i.int(0), i.int(1));
        let (k, s) = (j.int(0), j.int(1));
        if m + s >= n {
            return FreeVector::zero();
        }
        FreeVector::term(radford_index((l + k).rem_euclid(big_m), m + s), q.pow(m * k))
    }
}

pub fn build_radford(r: u32, n: u32, q: RootOfUnity) -> Result<Radford, HopfError> {
    if r == 0 || n == 0 {
        return Err(HopfError::Parameters("r and n must be positive".into()));
    }
    let big_m = r * n;
    if q.multiplicative_order() != big_m {
        return Err(HopfError::Parameters(format!(
            "q = z{}^{} is not a primitive root of unity of order {big_m}",
            q.order, q.exponent
        )));
    }
    let (mi, ni, ri) = (big_m as i64, n as i64, r as i64);
    let basis: Vec<BasisIndex> = (0..mi).flat_map(|l| (0..ni).map(move |m| radford_index(l, m))).collect();
    let algebra = AlgebraPresentation::new(
        format!("H({r},{n},q)"),
        Basis::finite(basis.clone()),
        radford_mult(mi, ni, q),
        FreeVector::basis(radford_index(0, 0)),
    );

    let hh = algebra.tensor(&algebra);
    let mono = |l: i64, m: i64| FreeVector::basis(radford_index(l.rem_euclid(mi), m));
    let delta_a = mono(1, 0).tensor(&mono(1, 0));
    let delta_x = mono(0, 0).tensor(&mono(0, 1)).add(&mono(0, 1).tensor(&mono(ri, 0)));
    let mut comul = BTreeMap::new();
    for i in &basis {
        let d = hh.product(
            &std::iter::repeat_n(delta_a.clone(), i.int(0) as usize)
                .chain(std::iter::repeat_n(delta_x.clone(), i.int(1) as usize))
                .collect::<Vec<_>>(),
        );
        comul.insert(i.clone(), d);
    }

    // Antipode on generators from m(S⊗Id)Δ(g) = ε(g)1:
    //   Δa = a⊗a          gives  S(a)·a = 1
    //   Δx = 1⊗x + x⊗a^r  gives  S(x)·a^r = ε(x)1 − S(1)x = −x
    let solve_right = |factor: FreeVector, target: FreeVector, what: &str| {
        let sys = LinearSystem::new(&algebra.right_mult(factor), &basis);
        sys.solve(&target).ok_or_else(|| HopfError::NoAntipode(what.to_string()))
    };
    let s_a = solve_right(mono(1, 0), algebra.one(), "a")?;
    let s_x = solve_right(mono(ri, 0), mono(0, 1).neg(), "x")?;
    let mut antipode = BTreeMap::new();
    for i in &basis {
        let (l, m) = (i.int(0) as u32, i.int(1) as u32);
        antipode.insert(i.clone(), algebra.mul(&algebra.pow(&s_x, m), &algebra.pow(&s_a, l)));
    }
    let s_map = table_map("H(r,n,q)", antipode.clone());
    let antipode_inv = invert_on_basis(&basis, &s_map)?;

    let hopf = HopfData {
        algebra,
        comul: table_map("H(r,n,q)", comul),
        counit: Arc::new(|i| if i.int(1) == 0 { CycScalar::one() } else { CycScalar::zero() }),
        antipode: s_map,
        antipode_inv: table_map("H(r,n,q)", antipode_inv),
    };

    let h1_basis: Vec<BasisIndex> = (0..ni).flat_map(|l| (0..ni).map(move |m| radford_index(l * ri, m))).collect();
    let h1 = AlgebraPresentation::new(
        format!("H1({r},{n},q)"),
        Basis::finite(h1_basis),
        radford_mult(mi, ni, q),
        FreeVector::basis(radford_index(0, 0)),
    );
    let group = build_group_algebra(&format!("k[C{r}]"), &cyclic_table(r as usize))?;
    Ok(Radford { r, n, q, hopf, h1, group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{check_comodule_algebra, check_hopf_axioms};

    fn h22() -> Radford {
        build_radford(2, 2, RootOfUnity::primitive(4)).unwrap()
    }

    #[test]
    fn dimension_and_basis() {
        let h = h22();
        assert_eq!(h.hopf.algebra.elements(0).len(), 8);
        assert_eq!(h.h1.elements(0).len(), 4);
    }

    #[test]
    fn xa_normal_form() {
        let h = h22();
        let xa = h.hopf.mul(&h.x(), &h.a_pow(1));
        assert_eq!(xa, h.monomial(1, 1).scale(&h.q.value()));
    }

    #[test]
    fn counit_of_x_vanishes() {
        assert!(h22().hopf.eps(&h22().x()).is_zero());
    }

    #[test]
    fn axioms_hold_exhaustively() {
        let h = h22();
        let report = check_hopf_axioms(&h.hopf, 0);
        assert!(report.passed(), "{report:?}");
        assert!(check_comodule_algebra(&h.comodule(), 0).passed());
    }

    #[test]
    fn identity_antipode_fails_at_x() {
        let h = h22();
        let broken = h.hopf.with_antipode(map1(|i| FreeVector::basis(i.clone())));
        let report = check_hopf_axioms(&broken, 0);
        let entry = report.get("antipode").unwrap();
        assert!(entry.status.is_fail());
        assert!(entry.witness.as_ref().unwrap().starts_with("at ax[0,1] "), "{entry:?}");
    }

    #[test]
    fn other_parameters_build() {
        for (r, n, k) in [(1, 2, 1), (3, 2, 5), (2, 3, 1)] {
            let q = RootOfUnity::new(r * n, k);
            let h = build_radford(r, n, q).unwrap();
            assert!(check_hopf_axioms(&h.hopf, 0).passed());
        }
        assert!(build_radford(2, 2, RootOfUnity::new(4, 2)).is_err());
    }
}
