//! The registry of worked examples and the verification suites run on each.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

use crate::crossed::{check_hopf_galois, cleft_to_crossed, CleftCrossed, CleftData, CrossedError};
use crate::crossed_calc::{
    build_crossed_fodc, build_higher_forms, check_graded_dc, classify_smash, compare_with_first_order,
    de_rham_cohomology, hor, necessity_dsigma, truncate_dc_degree2, twisted_dc, ver, CohomologyDegree,
    CrossedCalcError, CrossedFodc, GradedDc, HigherForms,
};
use crate::examples::smash::smash_demo;
use crate::examples::torus::{base_index, torus_base, torus_cleft};
use crate::fodc::{
    build_kahler_laurent, build_laurent_q_calculus, check_fodc, check_sigma_twisted_module_calculus,
    forced_zero_by_cocycle, universal_d, universal_fodc, universal_quotient, woronowicz_from_ideal, zero_calculus,
    Fodc, IdealCalculusSpec,
};
use crate::hopf::{
    build_group_algebra, build_radford, check_hopf_axioms, cyclic_table, group_index, laurent_index, parse_hopf_text,
    HopfData, HopfError,
};
use crate::linalg::{map1, BasisIndex, FreeVector, Subspace};
use crate::qpb::{
    canonical_connection, check_atiyah_exact, check_strong_section, coinvariant_forms, connection_form_bijection,
    covariant_derivative, tangent_and_fields, vertical_map, ConnectionData, HigherAtiyah, QpbError, VComodule,
};
use crate::report::{CheckEntry, CheckReport, Scope};
use crate::scalars::{CycScalar, RootOfUnity};

#[derive(Clone, Copy, Debug)]
pub enum ParamKind {
    Int { min: i64 },
    Choice(&'static [&'static str]),
    Path,
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub default: Option<&'static str>,
    pub help: &'static str,
}

#[derive(Debug)]
pub struct ExampleSpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    pub default_window: i64,
    pub suites: &'static [&'static str],
}

const IDEALS: &[&str] = &["zero", "full"];

static REGISTRY: &[ExampleSpec] = &[
    ExampleSpec {
        name: "radford",
        summary: "Radford Hopf algebra H(r,n,q) as a cleft extension of its subalgebra over k[C_r]",
        params: &[
            ParamSpec {
                name: "r",
                kind: ParamKind::Int { min: 1 },
                default: Some("2"),
                help: "order of the quotient group",
            },
            ParamSpec { name: "n", kind: ParamKind::Int { min: 1 }, default: Some("2"), help: "nilpotency order of x" },
            ParamSpec {
                name: "q",
                kind: ParamKind::Int { min: 1 },
                default: Some("1"),
                help: "q = z_(rn)^q, primitive",
            },
            ParamSpec {
                name: "ideal",
                kind: ParamKind::Choice(IDEALS),
                default: Some("zero"),
                help: "ideal of k[C_r]^+ for its calculus",
            },
        ],
        default_window: 0,
        suites: &["hopf", "crossed", "galois", "calculus", "necessity", "higher", "qpb"],
    },
    ExampleSpec {
        name: "torus",
        summary: "noncommutative torus over k[t,t^-1] with the zero calculus on k[(uv)^l]",
        params: &[
            ParamSpec { name: "M", kind: ParamKind::Int { min: 3 }, default: Some("8"), help: "lambda = z_M^theta" },
            ParamSpec { name: "theta", kind: ParamKind::Int { min: 1 }, default: Some("1"), help: "theta index" },
            ParamSpec {
                name: "qcalc",
                kind: ParamKind::Int { min: 1 },
                default: Some("2"),
                help: "q = z_M^qcalc for the calculus on H",
            },
        ],
        default_window: 4,
        suites: &["structure", "forced-zero", "necessity", "calculus", "higher", "qpb", "classification"],
    },
    ExampleSpec {
        name: "group-c2",
        summary: "group algebra k[C2] with the calculus of an ideal",
        params: &[ParamSpec {
            name: "ideal",
            kind: ParamKind::Choice(IDEALS),
            default: Some("zero"),
            help: "ideal of k[C2]^+",
        }],
        default_window: 0,
        suites: &["hopf", "calculus", "coinvariant", "truncation"],
    },
    ExampleSpec {
        name: "smash-demo",
        summary: "smash product k[w,w^-1] # k[t,t^-1] with t.w = lambda w, Kahler and q-calculi",
        params: &[
            ParamSpec {
                name: "M",
                kind: ParamKind::Int { min: 3 },
                default: Some("8"),
                help: "roots of unity of order M",
            },
            ParamSpec {
                name: "theta",
                kind: ParamKind::Int { min: 1 },
                default: Some("1"),
                help: "lambda = z_M^theta",
            },
            ParamSpec { name: "qcalc", kind: ParamKind::Int { min: 1 }, default: Some("2"), help: "q = z_M^qcalc" },
        ],
        default_window: 2,
        suites: &["calculus", "higher", "qpb", "classification"],
    },
    ExampleSpec {
        name: "hopf-file",
        summary: "finite Hopf algebra read from a structure-constant file",
        params: &[
            ParamSpec { name: "file", kind: ParamKind::Path, default: None, help: "path to the .hopf file" },
            ParamSpec {
                name: "ideal",
                kind: ParamKind::Choice(&["file", "zero", "full"]),
                default: Some("file"),
                help: "IDEAL lines of the file, or a fixed ideal",
            },
        ],
        default_window: 0,
        suites: &["hopf", "calculus", "coinvariant", "truncation"],
    },
];

pub fn registry() -> &'static [ExampleSpec] {
    REGISTRY
}

pub fn find_example(name: &str) -> Option<&'static ExampleSpec> {
    REGISTRY.iter().find(|e| e.name == name)
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ExampleError {
    #[error("unknown example '{0}'")]
    UnknownExample(String),
    #[error("example '{example}' takes no parameter '{param}'")]
    UnknownParam { example: String, param: String },
    #[error("parameter '{param}': {msg}")]
    BadParam { param: String, msg: String },
    #[error("example '{example}' has no suite '{suite}'")]
    UnknownSuite { example: String, suite: String },
    #[error("{0}")]
    Build(String),
}

impl ExampleError {
    /// Errors caused by the command line rather than the computation.
    pub fn is_usage(&self) -> bool {
        !matches!(self, ExampleError::Build(_))
    }
}

fn build(e: impl Display) -> ExampleError {
    ExampleError::Build(e.to_string())
}

fn hopf_build(e: HopfError) -> ExampleError {
    match e {
        HopfError::Parameters(msg) => ExampleError::BadParam { param: "parameters".into(), msg },
        other => build(other),
    }
}

/// Validated parameters with defaults filled in.
#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<String, String>);

impl Params {
    pub fn resolve(spec: &ExampleSpec, given: &BTreeMap<String, String>) -> Result<Params, ExampleError> {
        if let Some(k) = given.keys().find(|k| !spec.params.iter().any(|p| p.name == k.as_str())) {
            return Err(ExampleError::UnknownParam { example: spec.name.into(), param: k.clone() });
        }
        let mut values = BTreeMap::new();
        for p in spec.params {
            let bad = |msg: String| ExampleError::BadParam { param: p.name.into(), msg };
            let Some(v) = given.get(p.name).cloned().or(p.default.map(String::from)) else {
                return Err(bad("required".into()));
            };
            match p.kind {
                ParamKind::Int { min } => {
                    let n: i64 = v.parse().map_err(|_| bad(format!("'{v}' is not an integer")))?;
                    if n < min {
                        return Err(bad(format!("must be at least {min}")));
                    }
                }
                ParamKind::Choice(options) if !options.contains(&v.as_str()) => {
                    return Err(bad(format!("'{v}' is not one of {}", options.join(", "))));
                }
                _ => {}
            }
            values.insert(p.name.to_string(), v);
        }
        Ok(Params(values))
    }

    fn int(&self, name: &str) -> i64 {
        self.0[name].parse().expect("validated")
    }

    fn uint(&self, name: &str) -> u32 {
        u32::try_from(self.int(name)).expect("validated as positive")
    }

    fn str(&self, name: &str) -> &str {
        &self.0[name]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Suite {
    pub suite: String,
    pub checks: Vec<CheckEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub example: String,
    pub params: Params,
    pub window: i64,
    pub seed: u64,
    pub suites: Vec<Suite>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.checks.iter().all(|c| !c.status.is_fail()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyRun {
    pub example: String,
    pub params: Params,
    pub window: i64,
    /// Checks on the complex the cohomology was computed from.
    pub suites: Vec<Suite>,
    pub cohomology: Vec<CohomologyDegree>,
}

/// Collects suites, skipping those not selected.
struct Suites<'a> {
    only: Option<&'a str>,
    out: Vec<Suite>,
}

impl Suites<'_> {
    fn wants(&self, name: &str) -> bool {
        self.only.is_none_or(|o| o == name)
    }

    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<CheckReport, ExampleError>) -> Result<(), ExampleError> {
        if self.wants(name) {
            self.out.push(Suite { suite: name.into(), checks: f()?.checks });
        }
        Ok(())
    }
}

fn resolve(example: &str, given: &BTreeMap<String, String>) -> Result<(&'static ExampleSpec, Params), ExampleError> {
    let spec = find_example(example).ok_or_else(|| ExampleError::UnknownExample(example.into()))?;
    Ok((spec, Params::resolve(spec, given)?))
}

pub fn run_verify(
    example: &str,
    given: &BTreeMap<String, String>,
    suite: Option<&str>,
    window: Option<i64>,
    seed: u64,
) -> Result<Verification, ExampleError> {
    let (spec, params) = resolve(example, given)?;
    if let Some(s) = suite.filter(|s| !spec.suites.contains(s)) {
        return Err(ExampleError::UnknownSuite { example: example.into(), suite: s.into() });
    }
    let window = window.unwrap_or(spec.default_window);
    if window < 0 {
        return Err(ExampleError::BadParam { param: "window".into(), msg: "must be non-negative".into() });
    }
    let mut suites = Suites { only: suite, out: Vec::new() };
    match spec.name {
        "radford" => radford(&params, &mut suites)?,
        "torus" => torus(&params, window, seed, &mut suites)?,
        "group-c2" => finite_group(&c2()?, &params, &mut suites)?,
        "smash-demo" => smash(&params, window, seed, &mut suites)?,
        "hopf-file" => {
            let (h, ideal) = hopf_file(&params)?;
            finite_calculus(&h, ideal, &mut suites)?
        }
        _ => unreachable!("registry and dispatch agree"),
    }
    Ok(Verification { example: spec.name.into(), params, window, seed, suites: suites.out })
}

pub fn run_cohomology(
    example: &str,
    given: &BTreeMap<String, String>,
    max_degree: usize,
    window: Option<i64>,
) -> Result<CohomologyRun, ExampleError> {
    let (spec, params) = resolve(example, given)?;
    let window = window.unwrap_or(spec.default_window);
    let mut checks = CheckReport::new();
    let dc: GradedDc = match spec.name {
        "radford" => {
            let inst = RadfordInstance::new(&params)?;
            complex_of(&inst.cf, 0, &mut checks)?
        }
        "torus" => {
            let cf = torus_zero_base(&params, window)?;
            complex_of(&cf, window, &mut checks)?
        }
        "smash-demo" => {
            let (lambda, q) = smash_roots(&params)?;
            let d = smash_demo(lambda, q, window).map_err(build)?;
            complex_of(&d.calculus, window, &mut checks)?
        }
        "group-c2" | "hopf-file" => {
            let (h, ideal) = if spec.name == "group-c2" { (c2()?, ideal_choice(&params)) } else { hopf_file(&params)? };
            let calc = ideal_calculus(&h, ideal)?;
            let (dc, report) = truncate_dc_degree2(&calc, 0).map_err(build)?;
            checks.extend(report);
            dc
        }
        _ => unreachable!("registry and dispatch agree"),
    };
    let cohomology = de_rham_cohomology(&dc, max_degree, window);
    let suites = vec![Suite { suite: "complex".into(), checks: checks.checks }];
    Ok(CohomologyRun { example: spec.name.into(), params, window, suites, cohomology })
}

enum Ideal {
    Zero,
    Full,
    Given(Vec<FreeVector>),
}

fn ideal_choice(p: &Params) -> Ideal {
    match p.str("ideal") {
        "full" => Ideal::Full,
        _ => Ideal::Zero,
    }
}

/// The calculus H⁺/I ⊗ H for I = 0, I = H⁺ or the given generators.
fn ideal_calculus(h: &HopfData, ideal: Ideal) -> Result<Fodc, ExampleError> {
    let ideal_gens = match ideal {
        Ideal::Zero => Vec::new(),
        Ideal::Given(gens) => gens,
        Ideal::Full => h
            .algebra
            .basis
            .elements()
            .iter()
            .map(|i| FreeVector::basis(i.clone()).sub(&h.one().scale(&h.eps_idx(i))))
            .filter(|v| !v.is_zero())
            .collect(),
    };
    Ok(woronowicz_from_ideal(&IdealCalculusSpec { hopf: h.clone(), ideal_gens }).map_err(build)?.fodc)
}

fn c2() -> Result<HopfData, ExampleError> {
    build_group_algebra("C2", &cyclic_table(2)).map_err(hopf_build)
}

fn hopf_file(p: &Params) -> Result<(HopfData, Ideal), ExampleError> {
    let path = p.str("file");
    let src = std::fs::read_to_string(path)
        .map_err(|e| ExampleError::BadParam { param: "file".into(), msg: format!("cannot read {path}: {e}") })?;
    let parsed =
        parse_hopf_text(&src).map_err(|e| ExampleError::BadParam { param: "file".into(), msg: e.to_string() })?;
    let ideal = match p.str("ideal") {
        "file" => Ideal::Given(parsed.ideal),
        other => {
            if other == "full" {
                Ideal::Full
            } else {
                Ideal::Zero
            }
        }
    };
    Ok((parsed.hopf, ideal))
}

fn finite_group(h: &HopfData, p: &Params, suites: &mut Suites) -> Result<(), ExampleError> {
    finite_calculus(h, ideal_choice(p), suites)
}

fn finite_calculus(h: &HopfData, ideal: Ideal, suites: &mut Suites) -> Result<(), ExampleError> {
    suites.run("hopf", || Ok(check_hopf_axioms(h, 0)))?;
    let calc = ideal_calculus(h, ideal)?;
    suites.run("calculus", || Ok(check_fodc(&calc, 0)))?;
    if !calc.bicovariant() {
        for name in ["coinvariant", "truncation"] {
            suites.run(name, || {
                let mut r = CheckReport::new();
                r.record("bicovariant", Scope::Exhaustive, false, Some("the ideal is not Ad-invariant".into()), None);
                Ok(r)
            })?;
        }
        return Ok(());
    }
    suites.run("coinvariant", || Ok(coinvariant_forms(&calc, h, 0).map_err(build)?.report))?;
    suites.run("truncation", || {
        Ok(match truncate_dc_degree2(&calc, 0) {
            Ok((dc, report)) => {
                let mut r = report;
                r.extend(check_graded_dc(&dc, 0));
                r
            }
            Err(e) => {
                let mut r = CheckReport::new();
                r.record("truncatable", Scope::Exhaustive, false, Some(e.witness), None);
                r
            }
        })
    })
}

struct RadfordInstance {
    radford: crate::hopf::Radford,
    cleft: CleftData,
    cc: CleftCrossed,
    cf: CrossedFodc,
}

impl RadfordInstance {
    fn new(p: &Params) -> Result<Self, ExampleError> {
        let (r, n) = (p.uint("r"), p.uint("n"));
        let q = RootOfUnity::new(r * n, p.int("q"));
        let radford = build_radford(r, n, q).map_err(hopf_build)?;
        let cleft = CleftData::with_subalgebra(radford.comodule(), radford.h1.clone(), radford.cleaving());
        let cc = cleft_to_crossed(&cleft, 0).map_err(build)?;
        // σ takes the value a^r, so d(a^r) = 0 is imposed
        let b_calc =
            universal_quotient(&radford.h1, &[universal_d(&radford.h1, &radford.a_pow(r as i64))]).map_err(build)?;
        let h_calc = ideal_calculus(&radford.group, ideal_choice(p))?;
        let cf = build_crossed_fodc(&cc.crossed, &b_calc, &h_calc, 0).map_err(build)?;
        Ok(RadfordInstance { radford, cleft, cc, cf })
    }
}

fn radford(p: &Params, suites: &mut Suites) -> Result<(), ExampleError> {
    let inst = RadfordInstance::new(p)?;
    let RadfordInstance { radford: rad, cleft, cc, cf } = &inst;
    suites.run("hopf", || {
        let mut report = check_hopf_axioms(&rad.hopf, 0);
        report.extend(check_hopf_axioms(&rad.group, 0));
        Ok(report)
    })?;
    suites.run("crossed", || {
        let mut report = cc.report.clone();
        report.extend(cc.crossed.verification.clone());
        let r = rad.r as i64;
        let idx: Vec<(i64, i64)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
        // σ(ā^i ⊗ ā^j) = a^r when i + j ≥ r, else 1
        report.check("sigma-values", Scope::Exhaustive, idx.iter(), |(i, j)| {
            let got = (cc.crossed.cocycle.sigma)(&group_index(*i as usize), &group_index(*j as usize));
            let expected = if i + j >= r { rad.a_pow(r) } else { rad.a_pow(0) };
            crate::report::mismatch(format!("σ(ā^{i} ⊗ ā^{j})"), &got, &expected)
        });
        Ok(report)
    })?;
    suites.run("galois", || {
        let unit_h = rad.group.one();
        let base: Vec<FreeVector> =
            rad.h1.elements(0).iter().map(|b| FreeVector::basis(b.clone()).tensor(&unit_h)).collect();
        Ok(check_hopf_galois(&cc.crossed.comodule, &Subspace::spanned_by(&base)))
    })?;
    suites.run("calculus", || {
        let mut report = crate::crossed_calc::verify_crossed_fodc(cf, 0);
        if rad.r == 2 && rad.n == 2 && !cf.h_calc.forms.elements().is_empty() {
            report.extend(eight_term_expansion(rad, cf));
        }
        Ok(report)
    })?;
    suites.run("necessity", || {
        let universal = universal_fodc(&rad.h1).map_err(build)?;
        let raw = necessity_dsigma(&cc.crossed, &universal, &cf.h_calc, 0).map_err(build)?;
        Ok(expect_witness(raw, "dsigma", Scope::Exhaustive))
    })?;
    suites.run("higher", || higher_suite(cf, 0, 0))?;
    suites.run("qpb", || {
        let mut report = qpb_suite(cf, 0, true)?;
        report.extend(check_strong_section(cc, cleft, 0));
        let v = VComodule {
            name: format!("k[C{}]", rad.r),
            basis: rad.group.algebra.basis.elements(),
            coaction: map1(|g| FreeVector::basis(BasisIndex::pair(g, g))),
        };
        report.extend(covariant_derivative(cf, &v, None, 0).map_err(build)?.report);
        Ok(report)
    })
}

/// d(χ ⊗ (e1̄ + fā)) for χ = α + βx + γa² + δa²x against the eight terms
/// β e dx⊗1̄, β f dx⊗ā, δ e a²dx⊗1̄, δ f a²dx⊗ā and (α, β, γ, δ)·f ⊗ dā.
fn eight_term_expansion(rad: &crate::hopf::Radford, cf: &CrossedFodc) -> CheckReport {
    let int = CycScalar::from_int;
    let (alpha, beta, gamma, delta, e, f) = (int(2), int(3), int(5), int(7), int(11), int(13));
    let (b_calc, h_calc) = (&cf.b_calc, &cf.h_calc);
    let (a2, a2x) = (rad.a_pow(2), rad.monomial(2, 1));
    let chi = rad.h1.one().scale(&alpha).add(&rad.x().scale(&beta)).add(&a2.scale(&gamma)).add(&a2x.scale(&delta));
    let (one, abar) = (FreeVector::basis(group_index(0)), FreeVector::basis(group_index(1)));
    let h = one.scale(&e).add(&abar.scale(&f));
    let dx = b_calc.diff(&rad.x());
    let a2dx = b_calc.left_act(&a2, &dx);
    let dabar = h_calc.diff(&abar);
    let terms = [
        hor(&dx.scale(&beta.mul(&e)), &one),
        hor(&dx.scale(&beta.mul(&f)), &abar),
        hor(&a2dx.scale(&delta.mul(&e)), &one),
        hor(&a2dx.scale(&delta.mul(&f)), &abar),
        ver(&rad.h1.one().scale(&alpha.mul(&f)), &dabar),
        ver(&rad.x().scale(&beta.mul(&f)), &dabar),
        ver(&a2.scale(&gamma.mul(&f)), &dabar),
        ver(&a2x.scale(&delta.mul(&f)), &dabar),
    ];
    let expected = terms.iter().fold(FreeVector::zero(), |acc, t| acc.add(t));
    let got = cf.fodc.diff(&chi.tensor(&h));
    let mut report = CheckReport::new();
    let witness = crate::report::mismatch("d(χ ⊗ (e1̄ + fā))", &got, &expected);
    let distinct = terms.iter().all(|t| !t.is_zero());
    report.record(
        "eight-term-expansion",
        Scope::Exhaustive,
        witness.is_none() && distinct,
        witness.or(Some("a term vanishes".into())),
        None,
    );
    report
}

/// Turns a report whose `name` entry is expected to fail into one that
/// passes when a witness was produced.
fn expect_witness(raw: CheckReport, name: &str, scope: Scope) -> CheckReport {
    let mut report = CheckReport::new();
    let mut witness = None;
    for entry in raw.checks {
        if entry.name == name {
            witness = entry.witness.clone().filter(|_| entry.status.is_fail());
        } else {
            report.checks.push(entry);
        }
    }
    let ok = witness.is_some();
    report.record(&format!("{name}-witness"), scope, ok, Some(format!("no failure of '{name}' was found")), witness);
    report
}

/// Higher forms on A, or a failed "truncatable" entry when the calculus on
/// H admits no degree-2 truncation.
enum Higher {
    Built(Box<HigherForms>, GradedDc),
    Refused(CheckReport),
}

fn higher_forms(cf: &CrossedFodc, window: i64) -> Result<Higher, ExampleError> {
    let cp = &cf.crossed;
    let tc =
        check_sigma_twisted_module_calculus(&cf.b_calc, &cp.hopf, &cp.measure, &cp.cocycle, window).map_err(build)?;
    let b_dc = twisted_dc(&cf.b_calc, &cp.measure, &tc);
    let h_dc = match truncate_dc_degree2(&cf.h_calc, window) {
        Ok((h_dc, _)) => h_dc,
        Err(e) => {
            let mut r = CheckReport::new();
            r.record("truncatable", cf.h_calc.scope(window), false, Some(e.witness), None);
            return Ok(Higher::Refused(r));
        }
    };
    let hf = build_higher_forms(cp, &b_dc, &h_dc, window).map_err(build)?;
    Ok(Higher::Built(Box::new(hf), h_dc))
}

fn higher_suite(cf: &CrossedFodc, window: i64, dc_window: i64) -> Result<CheckReport, ExampleError> {
    match higher_forms(cf, window)? {
        Higher::Built(hf, _) => {
            let mut report = hf.hypotheses.clone();
            report.extend(check_graded_dc(&hf.dc, dc_window));
            report.extend(compare_with_first_order(&hf.dc, cf, window));
            Ok(report)
        }
        Higher::Refused(r) => Ok(r),
    }
}

fn complex_of(cf: &CrossedFodc, window: i64, checks: &mut CheckReport) -> Result<GradedDc, ExampleError> {
    match higher_forms(cf, window)? {
        Higher::Built(hf, _) => {
            checks.extend(hf.hypotheses);
            Ok(hf.dc)
        }
        Higher::Refused(r) => Err(build(r.failures().next().and_then(|e| e.witness.clone()).unwrap_or_default())),
    }
}

/// Vertical map, Atiyah exactness up to degree 2, the canonical connection
/// and, for finite calculi, the tangent space and the connection-form
/// bijection.
fn qpb_suite(cf: &CrossedFodc, window: i64, higher: bool) -> Result<CheckReport, ExampleError> {
    let vd = vertical_map(cf, window).map_err(build)?;
    let mut report = vd.coinv.report.clone();
    report.extend(vd.report.clone());
    let exact = match if higher { Some(higher_forms(cf, window)?) } else { None } {
        Some(Higher::Built(hf, h_dc)) => {
            check_atiyah_exact(&vd, Some(HigherAtiyah { total: &hf.dc, hopf_dc: &h_dc }), 2, window)
        }
        Some(Higher::Refused(mut r)) => {
            r.extend(check_atiyah_exact(&vd, None, 1, window));
            r
        }
        None => check_atiyah_exact(&vd, None, 1, window),
    };
    report.extend(exact);
    let (c, conn) = canonical_connection(&vd, window);
    report.extend(conn);
    match tangent_and_fields(&vd, window) {
        Ok((ts, _, tangent)) => {
            report.extend(tangent);
            let (form, forward) =
                connection_form_bijection(&vd, &ts, &ConnectionData::Connection(c), window).map_err(build)?;
            report.extend(forward);
            let (_, backward) = connection_form_bijection(&vd, &ts, &form, window).map_err(build)?;
            report.extend(backward);
        }
        Err(e @ QpbError::InfiniteCoinvariants(_)) => {
            report.record("tangent-refused", Scope::Window(window), true, None, Some(e.to_string()));
        }
        Err(e) => return Err(build(e)),
    }
    Ok(report)
}

fn torus_roots(p: &Params) -> (RootOfUnity, RootOfUnity) {
    let m = p.uint("M");
    (RootOfUnity::new(m, p.int("theta")), RootOfUnity::new(m, p.int("qcalc")))
}

fn torus_zero_base(p: &Params, window: i64) -> Result<CrossedFodc, ExampleError> {
    let (lambda, q) = torus_roots(p);
    let (_, data) = torus_cleft(lambda);
    let cc = cleft_to_crossed(&data, window).map_err(build)?;
    let qcalc = build_laurent_q_calculus(q).map_err(build)?;
    build_crossed_fodc(&cc.crossed, &zero_calculus(&torus_base()), &qcalc, window).map_err(build)
}

fn torus(p: &Params, window: i64, seed: u64, suites: &mut Suites) -> Result<(), ExampleError> {
    let (lambda, q) = torus_roots(p);
    let (torus, data) = torus_cleft(lambda);
    let cc = cleft_to_crossed(&data, window).map_err(|e: CrossedError| build(e))?;
    let scope = Scope::Window(window);
    suites.run("structure", || {
        let mut report = cc.report.clone();
        let t = laurent_index;
        let w = |l: i64| FreeVector::basis(base_index(l));
        let range: Vec<i64> = (-window..=window).collect();
        let grid = crate::report::pairs(&range, &range);
        // t^k · (uv)^l = λ^{−kl} (uv)^l
        report.check("measure-closed-form", scope, grid.iter(), |(k, l)| {
            let got = (cc.crossed.measure.act)(&t(**k), &base_index(**l));
            crate::report::mismatch(format!("t^{k}·w^{l}"), &got, &w(**l).scale(&lambda.pow(-**k * **l)))
        });
        let as_base = |v: FreeVector| (data.retraction)(&v).expect("σ lands in the base");
        let sigma = |a: i64, b: i64| (cc.crossed.cocycle.sigma)(&t(a), &t(b));
        let nonneg: Vec<i64> = (0..=window).collect();
        let quarter = crate::report::pairs(&nonneg, &nonneg);
        report.check("sigma-closed-form", scope, quarter.iter(), |(k, s)| {
            let (k, s) = (**k, **s);
            let mixed_ks =
                if s <= k { torus.monomial(s, s).scale(&lambda.pow(-s * (k - s))) } else { torus.monomial(k, k) };
            let mixed_sk = if k <= s {
                torus.monomial(k, k).scale(&lambda.pow(k * k))
            } else {
                torus.monomial(s, s).scale(&lambda.pow(s * k))
            };
            crate::report::mismatch(format!("σ(t^{k}⊗t^{s})"), &sigma(k, s), &w(0))
                .or_else(|| crate::report::mismatch(format!("σ(t^-{k}⊗t^-{s})"), &sigma(-k, -s), &w(0)))
                .or_else(|| crate::report::mismatch(format!("σ(t^{k}⊗t^-{s})"), &sigma(k, -s), &as_base(mixed_ks)))
                .or_else(|| crate::report::mismatch(format!("σ(t^-{k}⊗t^{s})"), &sigma(-k, s), &as_base(mixed_sk)))
        });
        Ok(report)
    })?;
    suites.run("forced-zero", || {
        Ok(forced_zero_by_cocycle(&torus_base(), &cc.crossed.hopf, &cc.crossed.cocycle, window))
    })?;
    suites.run("necessity", || {
        let qcalc = build_laurent_q_calculus(q).map_err(build)?;
        let raw = necessity_dsigma(&cc.crossed, &build_kahler_laurent(&torus_base()), &qcalc, window).map_err(build)?;
        Ok(expect_witness(raw, "dsigma", scope))
    })?;
    if !(suites.wants("calculus") || suites.wants("higher") || suites.wants("qpb") || suites.wants("classification")) {
        return Ok(());
    }
    let cf = torus_zero_base(p, window)?;
    suites.run("calculus", || Ok(crate::crossed_calc::verify_crossed_fodc(&cf, window)))?;
    suites.run("higher", || higher_suite(&cf, window, window))?;
    suites.run("qpb", || qpb_suite(&cf, window, true))?;
    suites.run("classification", || {
        let a_calc = zero_calculus(&data.total.algebra);
        let mut report = CheckReport::new();
        match classify_smash(&a_calc, &cf.h_calc, &data, None, window, seed) {
            Err(e @ CrossedCalcError::NotTrivialExtension(_)) => {
                report.record("refused-not-trivial-extension", scope, true, None, Some(e.to_string()));
            }
            Err(e) => return Err(build(e)),
            Ok(_) => {
                report.record("refused-not-trivial-extension", scope, false, Some("classification ran".into()), None);
            }
        }
        Ok(report)
    })
}

fn smash_roots(p: &Params) -> Result<(RootOfUnity, RootOfUnity), ExampleError> {
    Ok(torus_roots(p))
}

fn smash(p: &Params, window: i64, seed: u64, suites: &mut Suites) -> Result<(), ExampleError> {
    let (lambda, q) = smash_roots(p)?;
    let d = smash_demo(lambda, q, window).map_err(build)?;
    let cf = &d.calculus;
    suites.run("calculus", || Ok(crate::crossed_calc::verify_crossed_fodc(cf, window)))?;
    // degree-2 identities range over triples, so the window is reduced
    suites.run("higher", || higher_suite(cf, window, crate::report::triple_window(window)))?;
    suites.run("qpb", || qpb_suite(cf, window, false))?;
    suites.run("classification", || {
        let c =
            classify_smash(&cf.fodc, &cf.h_calc, &d.cleft, Some(d.pullback.clone()), window, seed).map_err(build)?;
        Ok(c.report)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn given(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn registry_lists_the_examples() {
        let names: Vec<&str> = registry().iter().map(|e| e.name).collect();
        for n in ["radford", "torus", "group-c2", "smash-demo"] {
            assert!(names.contains(&n), "{n}");
        }
    }

    #[test]
    fn unknown_parameters_and_suites_are_usage_errors() {
        let e = run_verify("radford", &given(&[("M", "8")]), None, None, 0).unwrap_err();
        assert!(matches!(e, ExampleError::UnknownParam { .. }) && e.is_usage());
        let e = run_verify("radford", &BTreeMap::new(), Some("nope"), None, 0).unwrap_err();
        assert!(e.is_usage());
        let e = run_verify("nope", &BTreeMap::new(), None, None, 0).unwrap_err();
        assert_eq!(e, ExampleError::UnknownExample("nope".into()));
    }

    #[test]
    fn non_primitive_q_is_rejected() {
        let e = run_verify("radford", &given(&[("q", "2")]), None, None, 0).unwrap_err();
        assert!(e.is_usage(), "{e}");
    }

    #[test]
    fn group_c2_suites_pass() {
        let v = run_verify("group-c2", &BTreeMap::new(), None, None, 0).unwrap();
        assert!(v.passed(), "{:?}", v.suites);
        assert_eq!(v.suites.len(), 4);
    }

    #[test]
    fn full_ideal_gives_the_zero_calculus() {
        let v = run_verify("group-c2", &given(&[("ideal", "full")]), Some("coinvariant"), None, 0).unwrap();
        assert!(v.passed(), "{:?}", v.suites);
        let detail = v.suites[0].checks[0].detail.clone();
        assert_eq!(detail.as_deref(), Some("dimension 0"));
    }

    #[test]
    fn c2_cohomology_degree_zero() {
        let run = run_cohomology("group-c2", &BTreeMap::new(), 1, None).unwrap();
        assert_eq!(run.cohomology[0].dimension, 1);
    }
}
