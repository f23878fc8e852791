//! Shannon quantities in bits, plus empirical joints from samples.

use std::collections::BTreeMap;

use super::alphabet::{Alphabet, Symbol};
use super::joint::{require_disjoint, JointDistribution, VarSet};
use super::value::{Pmf, Prob};
use crate::error::{Error, Result};

/// Rounding noise below this magnitude is clamped to zero for nonnegative quantities.
pub const NEGATIVE_FLOOR: f64 = 1e-12;

/// Clamps `[-NEGATIVE_FLOOR, 0)` to zero; larger negatives pass through unchanged.
pub fn clamp_nonnegative(v: f64) -> f64 {
    if (-NEGATIVE_FLOOR..=0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// `p * log2(p / q)`, zero when `p` is zero.
pub(crate) fn plogr(p: &Prob, q: &Prob) -> f64 {
    if p.is_zero() {
        0.0
    } else {
        p.to_f64() * p.log2_ratio(q)
    }
}

pub fn entropy(pmf: &Pmf) -> f64 {
    let h: f64 = pmf
        .probs()
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| -p.to_f64() * p.to_f64().log2())
        .sum();
    clamp_nonnegative(h)
}

/// `H(vars)` of a marginal.
pub fn joint_entropy(joint: &JointDistribution, vars: &VarSet) -> Result<f64> {
    Ok(entropy(&joint.pmf(vars)?))
}

pub fn mutual_information(joint: &JointDistribution, a: &VarSet, b: &VarSet) -> Result<f64> {
    require_disjoint(a, b)?;
    let (da, db, table) = joint.table(a, b)?;
    let pa = joint.pmf(a)?;
    let pb = joint.pmf(b)?;
    let cols = db.len();
    let mut sum = 0.0;
    for i in 0..da.len() {
        for j in 0..cols {
            let pij = &table[i * cols + j];
            if !pij.is_zero() {
                sum += plogr(pij, &(pa.prob(i) * pb.prob(j)));
            }
        }
    }
    Ok(clamp_nonnegative(sum))
}

/// `I(a; b | given)`.
pub fn conditional_mutual_information(
    joint: &JointDistribution,
    a: &VarSet,
    b: &VarSet,
    given: &VarSet,
) -> Result<f64> {
    require_disjoint(a, b)?;
    require_disjoint(a, given)?;
    require_disjoint(b, given)?;
    let ac = a.union(given);
    let (dac, db, t_acb) = joint.table(&ac, b)?;
    let (_, dc, t_bc) = joint.table(b, given)?;
    let pac = joint.pmf(&ac)?;
    let pc = joint.pmf(given)?;
    // `ac` indices are row-major with `given` varying fastest
    let c_len = dc.len();
    let nb = db.len();
    let mut sum = 0.0;
    for i in 0..dac.len() {
        let c = i % c_len;
        for j in 0..nb {
            let p = &t_acb[i * nb + j];
            if p.is_zero() {
                continue;
            }
            let q = &(pac.prob(i) * &t_bc[j * c_len + c]) / pc.prob(c);
            sum += plogr(p, &q);
        }
    }
    Ok(clamp_nonnegative(sum))
}

/// `I(x; y | z) - I(x; y)`; may be negative.
pub fn interaction_information(
    joint: &JointDistribution,
    x: &VarSet,
    y: &VarSet,
    z: &VarSet,
) -> Result<f64> {
    require_disjoint(x, z)?;
    require_disjoint(y, z)?;
    Ok(conditional_mutual_information(joint, x, y, z)? - mutual_information(joint, x, y)?)
}

/// Empirical joint from observed rows: exact relative frequencies. Alphabets
/// default to the sorted observed symbols.
pub fn joint_from_samples(
    rows: &[Vec<Symbol>],
    names: &[String],
    alphabets: Option<Vec<Alphabet>>,
) -> Result<JointDistribution> {
    if rows.is_empty() {
        return Err(Error::Format("no samples".into()));
    }
    for (k, r) in rows.iter().enumerate() {
        if r.len() != names.len() {
            return Err(Error::Format(format!(
                "row {} has {} fields, expected {}",
                k + 1,
                r.len(),
                names.len()
            )));
        }
    }
    let mut counts: BTreeMap<&Vec<Symbol>, i64> = BTreeMap::new();
    for r in rows {
        *counts.entry(r).or_insert(0) += 1;
    }
    let total = rows.len() as i64;
    let outcomes = counts
        .into_iter()
        .map(|(r, c)| (r.clone(), Prob::ratio(c, total)))
        .collect();
    JointDistribution::from_outcomes(names.to_vec(), alphabets, outcomes)
}
