use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hopf_calc_bench::{cyclotomic_samples, params, radford_params, torus_params};
use hopf_calc_core::examples::pipelines::{run_cohomology, run_verify};
use hopf_calc_core::hopf::{build_radford, check_hopf_axioms};
use hopf_calc_core::scalars::RootOfUnity;

fn scalars(c: &mut Criterion) {
    let xs = cyclotomic_samples(8, 16);
    c.bench_function("cyclotomic/mul-q8", |b| {
        b.iter(|| xs.iter().zip(xs.iter().skip(1)).map(|(x, y)| black_box(x.mul(y))).collect::<Vec<_>>())
    });
    c.bench_function("cyclotomic/inv-q8", |b| b.iter(|| xs.iter().map(|x| x.inv().unwrap()).collect::<Vec<_>>()));
}

fn hopf(c: &mut Criterion) {
    c.bench_function("radford/build-and-axioms", |b| {
        b.iter(|| {
            let rad = build_radford(2, 2, RootOfUnity::primitive(4)).unwrap();
            black_box(check_hopf_axioms(&rad.hopf, 0))
        })
    });
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    let radford = radford_params();
    for suite in ["crossed", "galois", "calculus", "qpb"] {
        g.bench_function(format!("radford/{suite}"), |b| {
            b.iter(|| run_verify("radford", &radford, Some(suite), None, 7).unwrap())
        });
    }
    let torus = torus_params();
    g.bench_function("torus/calculus-w2", |b| {
        b.iter(|| run_verify("torus", &torus, Some("calculus"), Some(2), 7).unwrap())
    });
    let smash = params(&[]);
    g.bench_function("smash-demo/classification", |b| {
        b.iter(|| run_verify("smash-demo", &smash, Some("classification"), None, 7).unwrap())
    });
    g.finish();
}

fn cohomology(c: &mut Criterion) {
    let c2 = params(&[("ideal", "zero")]);
    c.bench_function("cohomology/group-c2", |b| b.iter(|| run_cohomology("group-c2", &c2, 1, None).unwrap()));
}

criterion_group!(benches, scalars, hopf, suites, cohomology);
criterion_main!(benches);
