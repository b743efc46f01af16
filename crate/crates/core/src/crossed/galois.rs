use crate::hopf::ComoduleAlgebra;
use crate::linalg::{quotient_basis, BasisIndex, FreeVector, LinearSystem, Subspace};
use crate::report::{CheckReport, Scope};

/// Builds A ⊗_B A as A⊗A modulo ab⊗a' − a⊗ba' and checks that
/// can(a ⊗_B a') = aa'₀ ⊗ a'₁ is well defined and bijective.
pub fn check_hopf_galois(a: &ComoduleAlgebra, coinvariants: &Subspace) -> CheckReport {
    let mut report = CheckReport::new();
    let alg = &a.algebra;
    let abasis = alg.basis.elements();
    let hdim = a.hopf.algebra.basis.elements().len();
    let aa: Vec<BasisIndex> = abasis.iter().flat_map(|x| abasis.iter().map(move |y| BasisIndex::pair(x, y))).collect();

    let mut relations = Subspace::new();
    for b in coinvariants.basis() {
        for x in &abasis {
            let xb = alg.mul(&FreeVector::basis(x.clone()), b);
            for y in &abasis {
                let by = alg.mul(b, &FreeVector::basis(y.clone()));
                let yv = FreeVector::basis(y.clone());
                relations.insert(xb.tensor(&yv).sub(&FreeVector::basis(x.clone()).tensor(&by)));
            }
        }
    }
    let quotient = quotient_basis(&aa, &relations).expect("relations live in A⊗A");
    let can = |p: &BasisIndex| {
        let (x, y) = p.split2();
        a.rho_idx(y).map_terms(|f| alg.mul_idx(x, f[0]).tensor(&FreeVector::basis(f[1].clone())))
    };
    report.check("can-well-defined", Scope::Exhaustive, relations.basis(), |r| {
        let image = r.map_linear(can);
        (!image.is_zero()).then(|| format!("can({r}) = {image}"))
    });
    let rank = LinearSystem::from_images(&quotient.representatives, can).rank();
    let target = abasis.len() * hdim;
    let detail = Some(format!("dim A⊗_B A = {}, dim A⊗H = {target}, rank = {rank}", quotient.dim()));
    report.record(
        "can-injective",
        Scope::Exhaustive,
        rank == quotient.dim(),
        Some(format!("rank {rank} < {}", quotient.dim())),
        detail.clone(),
    );
    report.record("can-surjective", Scope::Exhaustive, rank == target, Some(format!("rank {rank} < {target}")), detail);
    report
}
