#![allow(dead_code)]

use pidtensor::prob::{Alphabet, JointDistribution, Prob, Symbol, VarSet};
use proptest::prelude::*;
use rand::Rng;

pub const NAMES: [&str; 5] = ["A", "B", "C", "D", "E"];

pub fn v(name: &str) -> VarSet {
    VarSet::parse(name).unwrap()
}

/// Exact joint over `sizes.len()` variables named A, B, ... from integer weights.
pub fn weighted_joint(sizes: &[usize], weights: &[u32]) -> JointDistribution {
    let total: i64 = weights.iter().map(|&w| w as i64).sum();
    JointDistribution::new(
        NAMES[..sizes.len()].iter().map(|s| s.to_string()).collect(),
        sizes.iter().map(|&n| Alphabet::range(n)).collect(),
        weights.iter().map(|&w| Prob::ratio(w as i64, total)).collect(),
    )
    .unwrap()
}

/// Strictly positive exact joints with alphabet sizes 2..=max_size.
pub fn arb_joint(vars: usize, max_size: usize) -> impl Strategy<Value = JointDistribution> {
    proptest::collection::vec(2..=max_size, vars).prop_flat_map(|sizes| {
        let cells: usize = sizes.iter().product();
        proptest::collection::vec(1u32..=9, cells)
            .prop_map(move |w| weighted_joint(&sizes, &w))
    })
}

pub fn random_joint<R: Rng>(rng: &mut R, vars: usize, max_size: usize) -> JointDistribution {
    let sizes: Vec<usize> = (0..vars).map(|_| rng.gen_range(2..=max_size)).collect();
    let cells: usize = sizes.iter().product();
    let weights: Vec<u32> = (0..cells).map(|_| rng.gen_range(1..=9)).collect();
    weighted_joint(&sizes, &weights)
}

/// Equal-weight joint from listed outcomes of variables X, Y, Z, ...
pub fn uniform_rows(names: &[&str], rows: &[&[i64]]) -> JointDistribution {
    let n = rows.len() as i64;
    JointDistribution::from_outcomes(
        names.iter().map(|s| s.to_string()).collect(),
        None,
        rows.iter()
            .map(|r| (r.iter().map(|&x| Symbol::from(x)).collect(), Prob::ratio(1, n)))
            .collect(),
    )
    .unwrap()
}

/// Small named systems with known decompositions.
pub fn fixtures() -> Vec<(&'static str, JointDistribution)> {
    let xyz = ["X", "Y", "Z"];
    vec![
        ("tbc", uniform_rows(&xyz, &[&[0, 0, 0], &[0, 1, 1], &[1, 0, 2], &[1, 1, 3]])),
        ("neg-synergy", uniform_rows(&xyz, &[&[0, 0, 0], &[0, 1, 0], &[1, 1, 0], &[1, 1, 1]])),
        (
            "dyadic",
            uniform_rows(
                &xyz,
                &[
                    &[0, 0, 0], &[0, 2, 1], &[1, 0, 2], &[1, 2, 3],
                    &[2, 1, 0], &[2, 3, 1], &[3, 1, 2], &[3, 3, 3],
                ],
            ),
        ),
        (
            "triadic",
            uniform_rows(
                &xyz,
                &[
                    &[0, 0, 0], &[1, 1, 1], &[0, 2, 2], &[1, 3, 3],
                    &[2, 0, 2], &[3, 1, 3], &[2, 2, 0], &[3, 3, 1],
                ],
            ),
        ),
        ("pwunq", uniform_rows(&xyz, &[&[0, 1, 1], &[1, 0, 1], &[0, 2, 2], &[2, 0, 2]])),
        ("rnderr", uniform_rows(&xyz, &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0], &[1, 1, 1], &[1, 1, 1], &[1, 1, 1], &[0, 1, 0], &[1, 0, 1]])),
        ("unq", uniform_rows(&xyz, &[&[0, 0, 0], &[1, 1, 1], &[0, 1, 0], &[1, 0, 1]])),
        ("and", uniform_rows(&xyz, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 1]])),
        ("xor", uniform_rows(&xyz, &[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])),
        ("sum", uniform_rows(&xyz, &[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 2]])),
    ]
}
