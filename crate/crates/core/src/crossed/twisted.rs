use super::{Cocycle, Measure};
use crate::hopf::{AlgebraPresentation, HopfData};
use crate::linalg::{BasisIndex, FreeVector};
use crate::report::{mismatch, pairs, triple_window, triples, CheckReport};

fn basis(i: &BasisIndex) -> FreeVector {
    FreeVector::basis(i.clone())
}

/// Checks that B is a σ-twisted H-module algebra and σ a normalized
/// invertible 2-cocycle.
pub fn check_twisted_module_algebra(
    b: &AlgebraPresentation,
    h: &HopfData,
    m: &Measure,
    s: &Cocycle,
    window: i64,
) -> CheckReport {
    let mut report = CheckReport::new();
    let scope = b.scope(window).join(h.algebra.scope(window));
    let tw = if scope == crate::report::Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let tscope = b.scope(tw).join(h.algebra.scope(tw));
    let (hs, bs) = (h.algebra.elements(window), b.elements(window));
    let (hs3, bs3) = (h.algebra.elements(tw), b.elements(tw));
    let hh = pairs(&hs, &hs);

    report.check("measure-unit", scope, hs.iter(), |x| {
        mismatch(x, &m.apply(&basis(x), &b.one()), &b.one().scale(&h.eps_idx(x)))
    });
    report.check("unit-acts-trivially", scope, bs.iter(), |y| mismatch(y, &m.apply(&h.one(), &basis(y)), &basis(y)));

    let hbb = triples(&hs3, &bs3, &bs3);
    report.check("measure-multiplicative", tscope, hbb.iter(), |(x, y, z)| {
        let lhs = m.apply(&basis(x), &b.mul_idx(y, z));
        let rhs = h.delta_idx(x).map_terms(|f| b.mul(&(m.act)(f[0], y), &(m.act)(f[1], z)));
        mismatch(format!("({x}, {y}, {z})"), &lhs, &rhs)
    });

    let hhb = triples(&hs3, &hs3, &bs3);
    report.check("twisted-module", tscope, hhb.iter(), |(x, y, z)| {
        let lhs = m.apply(&basis(x), &(m.act)(y, z));
        let (dx, dy) = (h.delta2_idx(x), h.delta2_idx(y));
        let mut rhs = FreeVector::zero();
        for (p, c) in dx.iter() {
            let (x1, x2, x3) = p.split3();
            for (q, e) in dy.iter() {
                let (y1, y2, y3) = q.split3();
                let mid = m.apply(&h.algebra.mul_idx(x2, y2), &basis(z));
                let term = b.mul3(&(s.sigma)(x1, y1), &mid, &(s.sigma_inv)(x3, y3));
                rhs.add_scaled(&term, &c.mul(e));
            }
        }
        mismatch(format!("({x}, {y}, {z})"), &lhs, &rhs)
    });

    let hhh = triples(&hs3, &hs3, &hs3);
    report.check("cocycle", tscope, hhh.iter(), |(x, y, z)| {
        let (dx, dy, dz) = (h.delta_idx(x), h.delta_idx(y), h.delta_idx(z));
        let mut lhs = FreeVector::zero();
        let mut rhs = FreeVector::zero();
        for (p, c) in dx.iter() {
            let (x1, x2) = p.split2();
            for (q, e) in dy.iter() {
                let (y1, y2) = q.split2();
                let ce = c.mul(e);
                for (r, f) in dz.iter() {
                    let (z1, z2) = r.split2();
                    let acted = m.apply(&basis(x1), &(s.sigma)(y1, z1));
                    let tail = s.apply(&basis(x2), &h.algebra.mul_idx(y2, z2));
                    lhs.add_scaled(&b.mul(&acted, &tail), &ce.mul(f));
                }
                let head = (s.sigma)(x1, y1);
                let tail = s.apply(&h.algebra.mul_idx(x2, y2), &basis(z));
                rhs.add_scaled(&b.mul(&head, &tail), &ce);
            }
        }
        mismatch(format!("({x}, {y}, {z})"), &lhs, &rhs)
    });

    report.check("normalization", scope, hs.iter(), |x| {
        let target = b.one().scale(&h.eps_idx(x));
        let one = h.one();
        mismatch(format!("σ({x}⊗1)"), &s.apply(&basis(x), &one), &target)
            .or_else(|| mismatch(format!("σ(1⊗{x})"), &s.apply(&one, &basis(x)), &target))
    });

    report.check("cocycle-inverse", scope, hh.iter(), |(x, y)| {
        let (dx, dy) = (h.delta_idx(x), h.delta_idx(y));
        let target = b.one().scale(&h.eps_idx(x).mul(&h.eps_idx(y)));
        let mut left = FreeVector::zero();
        let mut right = FreeVector::zero();
        for (p, c) in dx.iter() {
            let (x1, x2) = p.split2();
            for (q, e) in dy.iter() {
                let (y1, y2) = q.split2();
                let ce = c.mul(e);
                left.add_scaled(&b.mul(&(s.sigma)(x1, y1), &(s.sigma_inv)(x2, y2)), &ce);
                right.add_scaled(&b.mul(&(s.sigma_inv)(x1, y1), &(s.sigma)(x2, y2)), &ce);
            }
        }
        mismatch(format!("σ⋆σ⁻¹ ({x}, {y})"), &left, &target)
            .or_else(|| mismatch(format!("σ⁻¹⋆σ ({x}, {y})"), &right, &target))
    });
    report
}
