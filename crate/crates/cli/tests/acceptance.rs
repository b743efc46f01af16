//! The twelve acceptance criteria, one printed line each.
//!
//! Lines go straight to the process stderr so they show up without
//! `--nocapture`.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::{Command, Output};
use std::thread;

use hopf_calc_core::examples::pipelines::{run_verify, Verification};
use hopf_calc_core::report::{CheckEntry, Status};
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hopf-calc");

type Outcome = Result<(), String>;

fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn verify(example: &str, given: &[(&str, &str)]) -> Verification {
    run_verify(example, &params(given), None, None, 7).unwrap_or_else(|e| panic!("{example}: {e}"))
}

fn cli(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

/// Every entry called `name` in `suite`; all must succeed, and with `exact`
/// they must be exhaustive passes rather than window or sampled ones.
fn entries<'a>(v: &'a Verification, suite: &str, name: &str, exact: bool) -> Result<Vec<&'a CheckEntry>, String> {
    let s = v.suites.iter().find(|s| s.suite == suite).ok_or(format!("{}: no suite {suite}", v.example))?;
    let found: Vec<_> = s.checks.iter().filter(|c| c.name == name).collect();
    if found.is_empty() {
        return Err(format!("{}/{suite}: no check {name}", v.example));
    }
    for c in &found {
        if c.status.is_fail() || (exact && c.status != Status::Pass) {
            return Err(format!("{}/{suite}/{name}: {:?} {}", v.example, c.status, c.witness.as_deref().unwrap_or("")));
        }
    }
    Ok(found)
}

fn all(v: &Verification, suite: &str, names: &[&str], exact: bool) -> Outcome {
    names.iter().try_for_each(|n| entries(v, suite, n, exact).map(drop))
}

fn suite_clean(v: &Verification, suite: &str, exact: bool) -> Outcome {
    let s = v.suites.iter().find(|s| s.suite == suite).ok_or(format!("{}: no suite {suite}", v.example))?;
    s.checks.iter().try_for_each(|c| all(v, suite, &[&c.name], exact))
}

fn detail(c: &CheckEntry) -> &str {
    c.detail.as_deref().unwrap_or("")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn radford_end_to_end(r: &Verification) -> Outcome {
    suite_clean(r, "hopf", true)?;
    let assoc = entries(r, "hopf", "associativity", true)?;
    ensure(assoc.iter().any(|c| c.tested == 8 * 8 * 8), "no associativity check over an 8-element basis")?;
    all(r, "crossed", &["sigma-values"], true)?;
    suite_clean(r, "calculus", true)?;
    all(r, "calculus", &["eight-term-expansion"], true)
}

fn torus_closed_forms(t: &Verification) -> Outcome {
    ensure(t.window == 4, format!("window {}", t.window))?;
    all(t, "structure", &["measure-closed-form", "sigma-closed-form"], false)?;
    let fz = entries(t, "forced-zero", "forced-zero", false)?;
    ensure(fz[0].window == Some(4), "forced-zero not run on |l| ≤ 4")
}

fn atiyah(r: &Verification, t: &Verification) -> Outcome {
    let kernel = entries(r, "qpb", "atiyah-kernel", true)?;
    ensure(detail(kernel[0]).contains("dim ker(ver) = 8"), detail(kernel[0]).to_string())?;
    all(r, "qpb", &["atiyah-surjective", "atiyah-kernel-2", "atiyah-surjective-2"], true)?;
    all(t, "qpb", &["atiyah-kernel", "atiyah-surjective", "atiyah-kernel-2", "atiyah-surjective-2"], false)
}

fn strong_connection(r: &Verification, t: &Verification, s: &Verification) -> Outcome {
    all(r, "qpb", &["ver-c-identity", "strong", "canonical-unit"], true)?;
    all(t, "qpb", &["ver-c-identity", "strong"], false)?;
    all(s, "qpb", &["ver-c-identity", "strong"], false)
}

fn bijection(r: &Verification) -> Outcome {
    all(r, "qpb", &["dual-basis", "roundtrip-connection", "roundtrip-form"], true)
}

fn covariant(r: &Verification) -> Outcome {
    let sections = entries(r, "qpb", "sections", true)?;
    ensure(detail(sections[0]).ends_with("dim V = 2"), detail(sections[0]).to_string())?;
    all(r, "qpb", &["left-leibniz", "right-leibniz", "sigma-left-linear", "sigma-right-linear", "sigma-balanced"], true)
}

fn galois(r: &Verification) -> Outcome {
    for name in ["can-injective", "can-surjective"] {
        let c = entries(r, "galois", name, true)?;
        ensure(detail(c[0]).ends_with("rank = 16"), detail(c[0]).to_string())?;
    }
    Ok(())
}

fn necessity(r: &Verification, t: &Verification) -> Outcome {
    let rad = entries(r, "necessity", "dsigma-witness", true)?;
    ensure(detail(rad[0]).starts_with("at (g[1], g[1])"), detail(rad[0]).to_string())?;
    let tor = entries(t, "necessity", "dsigma-witness", false)?;
    ensure(detail(tor[0]).starts_with("at (t[1], t[-1])"), detail(tor[0]).to_string())
}

fn higher(r: &Verification, t: &Verification, s: &Verification) -> Outcome {
    let names = [
        "d-squared",
        "graded-leibniz",
        "wedge-associativity",
        "first-order-forms",
        "first-order-product",
        "first-order-left",
        "first-order-right",
        "first-order-d",
    ];
    all(r, "higher", &names, true)?;
    all(t, "higher", &names, false)?;
    all(s, "higher", &names, false)
}

fn classification(t: &Verification, s: &Verification) -> Outcome {
    suite_clean(s, "classification", false)?;
    all(
        s,
        "classification",
        &["classification-(1)", "classification-(2)", "classification-(3)", "theta-hat-d"],
        false,
    )?;
    let refused = entries(t, "classification", "refused-not-trivial-extension", false)?;
    ensure(detail(refused[0]).contains("not a trivial extension"), detail(refused[0]).to_string())
}

fn cohomology(out: &Output) -> Outcome {
    ensure(out.status.success(), format!("exit {:?}", out.status.code()))?;
    let doc: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let h0 = doc["cohomology"].as_array().and_then(|c| c.iter().find(|d| d["degree"] == 0)).ok_or("no degree 0")?;
    ensure(h0["dimension"] == 1, format!("H^0 = {}", h0["dimension"]))
}

fn determinism(first: &Output, second: &Output) -> Outcome {
    ensure(first.status.success() && second.status.success(), "a run failed")?;
    ensure(!first.stdout.is_empty() && first.stdout == second.stdout, "outputs differ")
}

#[test]
fn acceptance_criteria() {
    let determinism_args = ["verify", "radford", "--r", "2", "--n", "2", "--ideal", "zero", "--seed", "7"];
    let (rad, tor, smash, coh, runs) = thread::scope(|s| {
        let rad = s.spawn(|| verify("radford", &[("r", "2"), ("n", "2"), ("q", "1"), ("ideal", "zero")]));
        let tor = s.spawn(|| verify("torus", &[("M", "8"), ("theta", "1")]));
        let smash = s.spawn(|| verify("smash-demo", &[]));
        let coh = s.spawn(|| cli(&["cohomology", "group-c2", "--ideal", "zero", "--max-degree", "1"]));
        let runs = s.spawn(|| (cli(&determinism_args), cli(&determinism_args)));
        (rad.join(), tor.join(), smash.join(), coh.join(), runs.join())
    });
    let (r, t, s) = (rad.unwrap(), tor.unwrap(), smash.unwrap());
    let (coh, (first, second)) = (coh.unwrap(), runs.unwrap());

    let results: Vec<(&str, Outcome)> = vec![
        ("Radford H(2,2,ζ4) end to end", radford_end_to_end(&r)),
        ("torus closed forms and forced-zero calculus", torus_closed_forms(&t)),
        ("Atiyah exactness", atiyah(&r, &t)),
        ("canonical strong connection", strong_connection(&r, &t, &s)),
        ("connection-form bijection", bijection(&r)),
        ("covariant derivative", covariant(&r)),
        ("cleft implies Hopf-Galois", galois(&r)),
        ("necessity of d_B∘σ = 0", necessity(&r, &t)),
        ("higher forms", higher(&r, &t, &s)),
        ("classification of smash calculi", classification(&t, &s)),
        ("cohomology of k[C2]", cohomology(&coh)),
        ("determinism", determinism(&first, &second)),
    ];
    let mut err = std::io::stderr().lock();
    for (i, (name, outcome)) in results.iter().enumerate() {
        let line = match outcome {
            Ok(()) => format!("criterion {:>2}: PASS  {name}", i + 1),
            Err(why) => format!("criterion {:>2}: FAIL  {name}: {why}", i + 1),
        };
        writeln!(err, "{line}").unwrap();
    }
    let failed: Vec<_> = results.iter().filter(|(_, o)| o.is_err()).map(|(n, _)| *n).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
