use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_crossed_fodc, CrossedCalcError};
use crate::crossed::{cleft_to_crossed, CleftData};
use crate::fodc::{solve_presentations, Fodc};
use crate::linalg::{map1, map2, Basis, BasisIndex, FreeVector, LinearSystem, Map1, Subquotient, Subspace};
use crate::report::{mismatch, pairs, triple_window, CheckReport, Scope};
use crate::scalars::CycScalar;

/// A calculus on B together with an injective bimodule map into Ω¹(A)
/// intertwining the differentials.
#[derive(Clone)]
pub struct Pullback {
    pub calc: Fodc,
    pub embed: Map1,
}

#[derive(Clone)]
pub struct ClassificationReport {
    pub report: CheckReport,
    pub pullback: Pullback,
    /// Ω¹(B #_σ H) → Ω¹(A), present when all three conditions hold.
    pub theta_hat_inv: Option<Map1>,
}

fn basis(i: &BasisIndex) -> FreeVector {
    FreeVector::basis(i.clone())
}

fn rank_of(vectors: &[FreeVector]) -> usize {
    Subspace::spanned_by(vectors.iter()).dim()
}

/// B d_A B inside Ω¹(A), for finite B.
fn induced_pullback(a_calc: &Fodc, cleft: &CleftData) -> Result<Pullback, CrossedCalcError> {
    if !cleft.base.is_finite() {
        return Err(CrossedCalcError::NotFinite("the induced calculus on the base"));
    }
    let inc = cleft.inclusion.clone();
    let bs = cleft.base.basis.elements();
    let generators: Vec<FreeVector> = bs
        .iter()
        .flat_map(|b| bs.iter().map(|c| a_calc.left_act(&inc(b), &a_calc.diff(&inc(c)))).collect::<Vec<_>>())
        .collect();
    let sq = std::sync::Arc::new(Subquotient::new(generators.iter(), Subspace::new()));
    let labels: Vec<BasisIndex> = sq.labels().iter().map(|l| BasisIndex::wrap("pb", std::slice::from_ref(l))).collect();
    let embed: Map1 = {
        let sq = sq.clone();
        map1(move |l| sq.lift(l.idx(0)))
    };
    let coords = {
        let sq = sq.clone();
        move |v: &FreeVector| sq.coords(v).unwrap_or_else(|| panic!("{v} is outside B d_A B")).wrap("pb")
    };
    let left = {
        let (a, inc, embed, coords) = (a_calc.clone(), inc.clone(), embed.clone(), coords.clone());
        map2(move |b, l| coords(&a.left_act(&inc(b), &embed(l))))
    };
    let right = {
        let (a, inc, embed, coords) = (a_calc.clone(), inc.clone(), embed.clone(), coords.clone());
        map2(move |l, b| coords(&a.right_act(&embed(l), &inc(b))))
    };
    let d = {
        let (a, inc) = (a_calc.clone(), inc.clone());
        map1(move |b| coords(&a.diff(&inc(b))))
    };
    let table = solve_presentations(&cleft.base, &labels, &left, &d)?;
    let calc = Fodc {
        name: format!("B d_A B in {}", a_calc.name),
        algebra: cleft.base.clone(),
        forms: Basis::finite(labels),
        left,
        right,
        d,
        right_coaction: None,
        left_coaction: None,
        presentation: map1(move |w| table[w].clone()),
    };
    Ok(Pullback { calc, embed })
}

fn check_pullback(a_calc: &Fodc, cleft: &CleftData, pb: &Pullback, window: i64) -> CheckReport {
    let (calc, embed, inc) = (&pb.calc, &pb.embed, &cleft.inclusion);
    let embed_v = |v: &FreeVector| v.map_linear(|i| embed(i));
    let scope = calc.scope(window);
    let (bs, forms) = (calc.algebra.elements(window), calc.form_elements(window));
    let mut r = CheckReport::new();
    r.check("pullback-d", scope, bs.iter(), |b| mismatch(b, &embed_v(&(calc.d)(b)), &a_calc.diff(&inc(b))));
    r.check("pullback-left", scope, pairs(&bs, &forms), |(b, w)| {
        mismatch(format!("{b}·{w}"), &embed_v(&(calc.left)(b, w)), &a_calc.left_act(&inc(b), &embed(w)))
    });
    r.check("pullback-right", scope, pairs(&forms, &bs), |(w, b)| {
        mismatch(format!("{w}·{b}"), &embed_v(&(calc.right)(w, b)), &a_calc.right_act(&embed(w), &inc(b)))
    });
    let images: Vec<FreeVector> = forms.iter().map(|w| embed(w)).collect();
    let rank = rank_of(&images);
    r.record(
        "pullback-injective",
        scope,
        rank == forms.len(),
        Some(format!("rank {rank} on {} forms", forms.len())),
        Some(format!("{} forms", forms.len())),
    );
    r
}

/// Elements tested for torsion: basis elements and seeded random
/// combinations of three of them.
fn torsion_probes(a_calc: &Fodc, window: i64, seed: u64) -> Vec<FreeVector> {
    let els = a_calc.algebra.elements(window);
    let mut probes: Vec<FreeVector> = els.iter().map(basis).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let mut v = FreeVector::zero();
        for _ in 0..3 {
            let i = &els[rng.gen_range(0..els.len())];
            v.add_term(i.clone(), CycScalar::from_int(rng.gen_range(-3..=3)));
        }
        if !v.is_zero() {
            probes.push(v);
        }
    }
    probes
}

/// Checks whether a calculus on a trivial extension A ≅ B ⊗ H (with j an
/// algebra map) is isomorphic to the smash product calculus built from
/// the calculus induced on B and the given calculus on H.
pub fn classify_smash(
    a_calc: &Fodc,
    h_calc: &Fodc,
    cleft: &CleftData,
    pullback: Option<Pullback>,
    window: i64,
    seed: u64,
) -> Result<ClassificationReport, CrossedCalcError> {
    let a = &cleft.total.algebra;
    let hopf = &cleft.total.hopf;
    let (j, inc) = (cleft.cleaving.clone(), cleft.inclusion.clone());
    let j_v = |v: &FreeVector| v.map_linear(|x| j(x));
    let hs = hopf.algebra.elements(window);
    let j_one = j_v(&hopf.one());
    if j_one != a.one() {
        return Err(CrossedCalcError::NotTrivialExtension(format!("j(1) = {j_one} is not 1")));
    }
    for (x, y) in pairs(&hs, &hs) {
        let (lhs, rhs) = (a.mul(&j(x), &j(y)), j_v(&hopf.algebra.mul_idx(x, y)));
        if lhs != rhs {
            return Err(CrossedCalcError::NotTrivialExtension(format!("j({x})j({y}) = {lhs} but j({x}·{y}) = {rhs}")));
        }
    }
    let mut report = CheckReport::new();
    report.record("trivial-extension", hopf.algebra.scope(window), true, None, None);
    let cc = cleft_to_crossed(cleft, window)?;
    let jinv = cc.cleaving_inv.clone();

    let pb = match pullback {
        Some(p) => p,
        None => induced_pullback(a_calc, cleft)?,
    };
    report.extend(check_pullback(a_calc, cleft, &pb, window));

    let scope = a_calc.scope(window).join(h_calc.scope(window));
    let a_forms = a_calc.form_elements(window);
    let probes = torsion_probes(a_calc, window, seed);
    report.check("torsion-free", Scope::Sampled, probes.iter(), |x| {
        for (side, act) in [("left", true), ("right", false)] {
            let images: Vec<FreeVector> = a_forms
                .iter()
                .map(|w| if act { a_calc.left_act(x, &basis(w)) } else { a_calc.right_act(&basis(w), x) })
                .collect();
            let rank = rank_of(&images);
            if rank < a_forms.len() {
                return Some(format!("{side} multiplication by {x} has rank {rank} on {} forms", a_forms.len()));
            }
        }
        None
    });

    // (1) ĵ(h d_H h') = j(h) d_A j(h').
    let jhat_pairs = {
        let (a_calc, j) = (a_calc.clone(), j.clone());
        move |v: &FreeVector| {
            v.map_linear(|p| {
                let (x, y) = p.split2();
                a_calc.left_act(&j(x), &a_calc.diff(&j(y)))
            })
        }
    };
    let domain: Vec<BasisIndex> = pairs(&hs, &hs).into_iter().map(|(x, y)| BasisIndex::pair(x, y)).collect();
    let relations = LinearSystem::from_images(&domain, |p| h_calc.eval_pairs(&basis(p))).kernel();
    let ill_defined = relations.basis().find_map(|v| {
        let image = jhat_pairs(v);
        (!image.is_zero()).then(|| format!("Σ h dh' = 0 for {v} but its image is {image}"))
    });
    let jhat: Map1 = {
        let (pres, jp) = (h_calc.presentation.clone(), jhat_pairs.clone());
        map1(move |g| jp(&pres(g)))
    };
    let h_forms = h_calc.form_elements(window);
    let jhat_images: Vec<FreeVector> = h_forms.iter().map(|g| jhat(g)).collect();
    let jhat_rank = rank_of(&jhat_images);
    let cond1 = ill_defined.is_none() && jhat_rank == h_forms.len();
    let cond1_witness = ill_defined.unwrap_or_else(|| format!("ĵ has rank {jhat_rank} on {} forms", h_forms.len()));
    report.record(
        "classification-(1)",
        scope,
        cond1,
        Some(cond1_witness),
        Some(format!("{} relations", relations.dim())),
    );

    // (2) ι̂(Ω¹(B)) j(H) ∩ ι(B) ĵ(Ω¹(H)) = 0.
    let bs = cleft.base.elements(window);
    let horizontal: Vec<FreeVector> = pairs(&pb.calc.form_elements(window), &hs)
        .into_iter()
        .map(|(w, x)| a_calc.right_act(&(pb.embed)(w), &j(x)))
        .collect();
    let vertical: Vec<FreeVector> =
        pairs(&bs, &h_forms).into_iter().map(|(b, g)| a_calc.left_act(&inc(b), &jhat(g))).collect();
    let meet = Subspace::spanned_by(horizontal.iter()).intersection_dim(&Subspace::spanned_by(vertical.iter()));
    report.record(
        "classification-(2)",
        scope,
        meet == 0,
        Some(format!("intersection has dimension {meet}")),
        Some(format!("dimension {meet}")),
    );

    // (3) d_A(j(h₁)) b j⁻¹(h₂) = −j(h₁) b d_A(j⁻¹(h₂)).
    report.check("classification-(3)", scope, pairs(&hs, &bs), |(x, b)| {
        let split = hopf.delta_idx(x);
        let lhs = split.map_terms(|t| a_calc.right_act(&a_calc.diff(&j(t[0])), &a.mul(&inc(b), &jinv(t[1]))));
        let rhs = split.map_terms(|t| a_calc.left_act(&a.mul(&j(t[0]), &inc(b)), &a_calc.diff(&jinv(t[1])))).neg();
        mismatch(format!("({x}, {b})"), &lhs, &rhs)
    });

    let all_conditions = ["classification-(1)", "classification-(2)", "classification-(3)"]
        .iter()
        .all(|n| report.status(n).is_some_and(|s| !s.is_fail()));
    if !all_conditions {
        return Ok(ClassificationReport { report, pullback: pb, theta_hat_inv: None });
    }

    let smash = build_crossed_fodc(&cc.crossed, &pb.calc, h_calc, window)?;
    let theta_hat_inv: Map1 = {
        let (a_calc, embed, j, inc, jhat) = (a_calc.clone(), pb.embed.clone(), j.clone(), inc.clone(), jhat.clone());
        map1(move |w| match w.tag() {
            "hor" => a_calc.right_act(&embed(w.idx(0)), &j(w.idx(1))),
            _ => a_calc.left_act(&inc(w.idx(0)), &jhat(w.idx(1))),
        })
    };
    let th = |v: &FreeVector| v.map_linear(|i| theta_hat_inv(i));
    let t_inv = |v: &FreeVector| v.map_linear(|i| (cc.theta_inv)(i));
    let f = &smash.fodc;
    let pw = if scope == Scope::Exhaustive { window } else { triple_window(window).max(1) };
    let pscope = f.scope(pw);
    let (xs, ws) = (f.algebra.elements(pw), f.form_elements(pw));
    report.check("theta-hat-left", pscope, pairs(&xs, &ws), |(x, w)| {
        let lhs = th(&(f.left)(x, w));
        let rhs = a_calc.left_act(&(cc.theta_inv)(x), &theta_hat_inv(w));
        mismatch(format!("{x}·{w}"), &lhs, &rhs)
    });
    report.check("theta-hat-right", pscope, pairs(&ws, &xs), |(w, x)| {
        let lhs = th(&(f.right)(w, x));
        let rhs = a_calc.right_act(&theta_hat_inv(w), &(cc.theta_inv)(x));
        mismatch(format!("{w}·{x}"), &lhs, &rhs)
    });
    report.check("theta-hat-d", scope, f.algebra.elements(window).iter(), |x| {
        mismatch(x, &th(&(f.d)(x)), &a_calc.diff(&t_inv(&basis(x))))
    });
    let smash_forms = f.form_elements(window);
    let images: Vec<FreeVector> = smash_forms.iter().map(|w| theta_hat_inv(w)).collect();
    let image = Subspace::spanned_by(images.iter());
    report.record(
        "theta-hat-injective",
        scope,
        image.dim() == smash_forms.len(),
        Some(format!("rank {} on {} forms", image.dim(), smash_forms.len())),
        None,
    );
    let reach = if scope == Scope::Exhaustive { window } else { window + 1 };
    let wide: Vec<FreeVector> = f.form_elements(reach).iter().map(|w| theta_hat_inv(w)).collect();
    let wide = Subspace::spanned_by(wide.iter());
    let missed = a_forms.iter().find(|w| !wide.contains(&basis(w)));
    report.record("theta-hat-surjective", scope, missed.is_none(), missed.map(|w| format!("{w} is not reached")), None);
    Ok(ClassificationReport { report, pullback: pb, theta_hat_inv: Some(theta_hat_inv) })
}
