//! Convolution products Hom(C, A) and inverses found by linear solving.

use std::collections::BTreeMap;

use super::algebra::AlgebraPresentation;
use super::hopf_data::Coalgebra;
use super::HopfError;
use crate::linalg::{BasisIndex, FreeVector, LinearSystem};

/// (f ⋆ g)(c) = f(c₁)g(c₂).
pub fn convolve(
    coalgebra: &Coalgebra,
    algebra: &AlgebraPresentation,
    f: impl Fn(&BasisIndex) -> FreeVector,
    g: impl Fn(&BasisIndex) -> FreeVector,
    c: &BasisIndex,
) -> FreeVector {
    (coalgebra.comul)(c).map_terms(|p| algebra.mul(&f(p[0]), &g(p[1])))
}

/// Solves for g with f⋆g = ε1 = g⋆f on every element of `c_basis`, looking
/// for values of g inside the span of `a_basis`. `c_basis` must be closed
/// under taking coproduct factors.
pub fn convolution_inverse(
    coalgebra: &Coalgebra,
    algebra: &AlgebraPresentation,
    f: impl Fn(&BasisIndex) -> FreeVector,
    c_basis: &[BasisIndex],
    a_basis: &[BasisIndex],
) -> Result<BTreeMap<BasisIndex, FreeVector>, HopfError> {
    // For each unknown g(c'), the equations it enters: (c, coefficient, f-value, side).
    let domain: std::collections::BTreeSet<&BasisIndex> = c_basis.iter().collect();
    let mut uses: BTreeMap<BasisIndex, Vec<(BasisIndex, crate::scalars::CycScalar, FreeVector, bool)>> =
        BTreeMap::new();
    for c in c_basis {
        for (p, coeff) in (coalgebra.comul)(c).iter() {
            let (c1, c2) = p.split2();
            for (other, fval, left) in [(c2, f(c1), true), (c1, f(c2), false)] {
                if !domain.contains(other) {
                    return Err(HopfError::NotInvertible(format!(
                        "coproduct factor {other} of {c} is outside the domain"
                    )));
                }
                uses.entry(other.clone()).or_default().push((c.clone(), coeff.clone(), fval, left));
            }
        }
    }
    let one = algebra.one();
    let eq_index = |c: &BasisIndex, left: bool, r: &BasisIndex| {
        BasisIndex::tensor(&[c.clone(), BasisIndex::new(if left { "L" } else { "R" }, &[]), r.clone()])
    };
    let place = |c: &BasisIndex, left: bool, v: &FreeVector| v.map_linear(|r| FreeVector::basis(eq_index(c, left, r)));
    let unknowns: Vec<BasisIndex> =
        c_basis.iter().flat_map(|c| a_basis.iter().map(move |a| BasisIndex::pair(c, a))).collect();
    let image_of = |u: &BasisIndex, only: Option<&BasisIndex>| {
        let (cp, a) = u.split2();
        let av = FreeVector::basis(a.clone());
        let mut out = FreeVector::zero();
        for (c, coeff, fval, left) in uses.get(cp).into_iter().flatten() {
            if only.is_some_and(|o| o != c) {
                continue;
            }
            let prod = if *left { algebra.mul(fval, &av) } else { algebra.mul(&av, fval) };
            out.add_scaled(&place(c, *left, &prod), coeff);
        }
        out
    };
    let target_for = |c: &BasisIndex| {
        let e = (coalgebra.counit)(c);
        place(c, true, &one).add(&place(c, false, &one)).scale(&e)
    };
    let system = LinearSystem::from_images(&unknowns, |u| image_of(u, None));
    let mut target = FreeVector::zero();
    for c in c_basis {
        target.add_assign(&target_for(c));
    }
    let Some(solution) = system.solve(&target) else {
        // Name the first element whose own equations are already inconsistent.
        for c in c_basis {
            let local = LinearSystem::from_images(&unknowns, |u| image_of(u, Some(c)));
            if local.solve(&target_for(c)).is_none() {
                return Err(HopfError::NotInvertible(c.to_string()));
            }
        }
        return Err(HopfError::NotInvertible("jointly inconsistent convolution equations".into()));
    };
    let mut table: BTreeMap<BasisIndex, FreeVector> = c_basis.iter().map(|c| (c.clone(), FreeVector::zero())).collect();
    for (u, coeff) in solution.iter() {
        let (c, a) = u.split2();
        table.get_mut(c).expect("unknown outside domain").add_term(a.clone(), coeff.clone());
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{build_group_algebra, build_radford, cyclic_table, group_index};
    use crate::linalg::LinOp;
    use crate::scalars::RootOfUnity;

    #[test]
    fn identity_on_group_algebra_inverts_elements() {
        let h = build_group_algebra("C3", &cyclic_table(3)).unwrap();
        let basis = h.algebra.elements(0);
        let g =
            convolution_inverse(&h.coalgebra(), &h.algebra, |i| FreeVector::basis(i.clone()), &basis, &basis).unwrap();
        assert_eq!(g[&group_index(1)], FreeVector::basis(group_index(2)));
        assert_eq!(g[&group_index(0)], FreeVector::basis(group_index(0)));
    }

    #[test]
    fn identity_inverse_is_the_antipode() {
        let h = build_radford(2, 2, RootOfUnity::primitive(4)).unwrap();
        let basis = h.hopf.algebra.elements(0);
        let g =
            convolution_inverse(&h.hopf.coalgebra(), &h.hopf.algebra, |i| FreeVector::basis(i.clone()), &basis, &basis)
                .unwrap();
        for b in &basis {
            assert_eq!(g[b], (h.hopf.antipode)(b), "at {b}");
            let both =
                convolve(&h.hopf.coalgebra(), &h.hopf.algebra, |i| FreeVector::basis(i.clone()), |i| g[i].clone(), b);
            assert_eq!(both, h.hopf.one().scale(&h.hopf.eps_idx(b)));
        }
    }

    #[test]
    fn zero_map_is_not_invertible() {
        let h = build_group_algebra("C2", &cyclic_table(2)).unwrap();
        let basis = h.algebra.elements(0);
        let zero = LinOp::zero();
        let err = convolution_inverse(&h.coalgebra(), &h.algebra, |i| zero.on_basis(i), &basis, &basis).unwrap_err();
        assert!(matches!(err, HopfError::NotInvertible(ref c) if c == &group_index(0).to_string()));
    }
}
