//! Fixtures shared by the benchmarks.

use std::collections::BTreeMap;

use hopf_calc_core::scalars::CycScalar;

pub fn params(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// H(2,2,ζ4) with the zero ideal.
pub fn radford_params() -> BTreeMap<String, String> {
    params(&[("r", "2"), ("n", "2"), ("q", "1"), ("ideal", "zero")])
}

pub fn torus_params() -> BTreeMap<String, String> {
    params(&[("M", "8"), ("theta", "1"), ("qcalc", "2")])
}

/// Dense elements 1 + 2ζ + ... of Q(ζ_order), one per shift.
pub fn cyclotomic_samples(order: u32, count: usize) -> Vec<CycScalar> {
    (0..count)
        .map(|s| {
            (0..order as i64).fold(CycScalar::zero(), |acc, k| {
                acc.add(&CycScalar::root_of_unity(order, k).mul(&CycScalar::from_ratio(k + 1 + s as i64, 3)))
            })
        })
        .collect()
}
