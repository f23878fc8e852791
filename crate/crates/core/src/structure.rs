//! Edge classification (direct, indirect, no-information) and inference of
//! the graphs that gate redundancy paths.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::channel::CausalTensor;
use crate::error::{Error, Result};
use crate::prob::{mutual_information, JointDistribution, VarSet};

/// An undirected pair of distinct variable names, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge(String, String);

impl Edge {
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge(a, b)),
            std::cmp::Ordering::Greater => Ok(Edge(b, a)),
            std::cmp::Ordering::Equal => Err(Error::Format(format!("edge `{a}`-`{a}` is a loop"))),
        }
    }

    pub fn a(&self) -> &str {
        &self.0
    }

    pub fn b(&self) -> &str {
        &self.1
    }

    pub fn touches(&self, name: &str) -> bool {
        self.0 == name || self.1 == name
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Verdict for one variable pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeStatus {
    Direct,
    /// Explained by the cascade through `via` (mediators in order from `a` to `b`).
    Indirect { via: Vec<String> },
    NoInformation,
    /// Dropped by an explicit structure override without a cascade witness.
    Removed,
}

/// Per-pair data recorded by inference.
#[derive(Debug, Clone)]
pub struct EdgeRecord {
    pub status: EdgeStatus,
    pub forward: CausalTensor,
    pub backward: CausalTensor,
    pub mutual_information: f64,
    /// Every mediator sequence whose cascade matches the pair in both orientations.
    pub witnesses: Vec<Vec<String>>,
}

fn singleton(name: &str) -> VarSet {
    VarSet::single(name)
}

/// Pairwise tensors between singleton variables, built once per joint.
struct PairTensors<'a> {
    joint: &'a JointDistribution,
    cache: BTreeMap<(String, String), CausalTensor>,
}

impl<'a> PairTensors<'a> {
    fn new(joint: &'a JointDistribution) -> Self {
        PairTensors { joint, cache: BTreeMap::new() }
    }

    fn get(&mut self, a: &str, b: &str) -> Result<CausalTensor> {
        let key = (a.to_string(), b.to_string());
        if let Some(t) = self.cache.get(&key) {
            return Ok(t.clone());
        }
        let t = CausalTensor::from_joint(self.joint, &singleton(a), &singleton(b))?;
        self.cache.insert(key, t.clone());
        Ok(t)
    }

    /// Composed tensor along `chain`; same result as `path_tensor` on the
    /// corresponding singleton path.
    fn chain(&mut self, chain: &[&str]) -> Result<CausalTensor> {
        let mut t = self.get(chain[0], chain[1])?;
        for w in chain[1..].windows(2) {
            t = t.compose(&self.get(w[0], w[1])?)?;
        }
        Ok(t)
    }

    fn witnesses(&mut self, a: &str, b: &str, tol: f64) -> Result<Vec<Vec<String>>> {
        let forward = self.get(a, b)?;
        let backward = self.get(b, a)?;
        let others: Vec<&String> = self.joint.names().iter().filter(|n| *n != a && *n != b).collect();
        let mut found = Vec::new();
        for len in 1..=others.len() {
            for seq in others.iter().copied().permutations(len) {
                let mut chain = vec![a];
                chain.extend(seq.iter().map(|s| s.as_str()));
                chain.push(b);
                if !forward.approx_eq(&self.chain(&chain)?, tol)? {
                    continue;
                }
                chain.reverse();
                if backward.approx_eq(&self.chain(&chain)?, tol)? {
                    found.push(seq.into_iter().cloned().collect());
                }
            }
        }
        Ok(found)
    }
}

/// Mediator sequences over the remaining singleton variables that reproduce
/// the `a`-`b` tensor in both orientations.
pub fn cascade_witnesses(
    joint: &JointDistribution,
    a: &str,
    b: &str,
    tol: f64,
) -> Result<Vec<Vec<String>>> {
    PairTensors::new(joint).witnesses(a, b, tol)
}

/// Classifies a single pair against the whole joint.
pub fn edge_test(joint: &JointDistribution, a: &str, b: &str, tol: f64) -> Result<EdgeStatus> {
    joint.var_index(a)?;
    joint.var_index(b)?;
    if a == b {
        return Err(Error::Overlap(a.to_string()));
    }
    let t = CausalTensor::from_joint(joint, &singleton(a), &singleton(b))?;
    if t.is_no_information(tol) {
        return Ok(EdgeStatus::NoInformation);
    }
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut w = cascade_witnesses(joint, lo, hi, tol)?;
    if w.is_empty() {
        Ok(EdgeStatus::Direct)
    } else {
        let mut via = w.remove(0);
        if lo != a {
            via.reverse();
        }
        Ok(EdgeStatus::Indirect { via })
    }
}

/// An inferred (or pinned) graph over the singleton variables of a joint.
#[derive(Debug, Clone)]
pub struct Structure {
    variables: Vec<String>,
    edges: BTreeMap<Edge, EdgeRecord>,
    retained: BTreeSet<Edge>,
    ambiguous: bool,
    candidates: Vec<BTreeSet<Edge>>,
}

fn all_pairs(joint: &JointDistribution) -> Result<Vec<Edge>> {
    joint
        .names()
        .iter()
        .tuple_combinations()
        .map(|(a, b)| Edge::new(a.clone(), b.clone()))
        .collect()
}

fn analyse_pairs(joint: &JointDistribution, tol: f64) -> Result<BTreeMap<Edge, EdgeRecord>> {
    let mut pairs = PairTensors::new(joint);
    let mut out = BTreeMap::new();
    for e in all_pairs(joint)? {
        let forward = pairs.get(e.a(), e.b())?;
        let backward = pairs.get(e.b(), e.a())?;
        let mi = mutual_information(joint, &singleton(e.a()), &singleton(e.b()))?;
        let no_info = forward.is_no_information(tol);
        let witnesses =
            if no_info { Vec::new() } else { pairs.witnesses(e.a(), e.b(), tol)? };
        let status = if no_info { EdgeStatus::NoInformation } else { EdgeStatus::Direct };
        out.insert(e, EdgeRecord { status, forward, backward, mutual_information: mi, witnesses });
    }
    Ok(out)
}

fn witness_within<'a>(
    edge: &Edge,
    witnesses: &'a [Vec<String>],
    kept: &BTreeSet<Edge>,
) -> Option<&'a Vec<String>> {
    witnesses.iter().find(|via| {
        let mut chain = vec![edge.a()];
        chain.extend(via.iter().map(String::as_str));
        chain.push(edge.b());
        chain.windows(2).all(|w| Edge::new(w[0], w[1]).is_ok_and(|e| kept.contains(&e)))
    })
}

/// Fills statuses for `retained` given precomputed pair records.
fn assemble(
    variables: Vec<String>,
    mut edges: BTreeMap<Edge, EdgeRecord>,
    retained: BTreeSet<Edge>,
) -> Structure {
    let updates: Vec<(Edge, EdgeStatus)> = edges
        .iter()
        .map(|(e, r)| {
            let status = if r.status == EdgeStatus::NoInformation && !retained.contains(e) {
                EdgeStatus::NoInformation
            } else if retained.contains(e) {
                EdgeStatus::Direct
            } else {
                match witness_within(e, &r.witnesses, &retained) {
                    Some(via) => EdgeStatus::Indirect { via: via.clone() },
                    None => EdgeStatus::Removed,
                }
            };
            (e.clone(), status)
        })
        .collect();
    for (e, s) in updates {
        edges.get_mut(&e).expect("known edge").status = s;
    }
    Structure { variables, edges, retained, ambiguous: false, candidates: Vec::new() }
}

/// Every maximal consistent removal outcome: no-information edges go first,
/// then each removed edge must have a cascade witness over kept edges, and no
/// kept edge may still be explainable by the others.
pub fn infer_structures(joint: &JointDistribution, tol: f64) -> Result<Vec<Structure>> {
    if joint.variable_count() < 2 {
        return Err(Error::Format("structure inference needs at least two variables".into()));
    }
    let records = analyse_pairs(joint, tol)?;
    let informative: Vec<Edge> = records
        .iter()
        .filter(|(_, r)| r.status != EdgeStatus::NoInformation)
        .map(|(e, _)| e.clone())
        .collect();
    let removable: Vec<usize> =
        (0..informative.len()).filter(|&k| !records[&informative[k]].witnesses.is_empty()).collect();

    let mut outcomes: Vec<BTreeSet<Edge>> = Vec::new();
    for mask in 0u64..(1u64 << removable.len()) {
        let removed: BTreeSet<&Edge> = removable
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, &k)| &informative[k])
            .collect();
        let kept: BTreeSet<Edge> =
            informative.iter().filter(|e| !removed.contains(e)).cloned().collect();
        let consistent = removed
            .iter()
            .all(|e| witness_within(e, &records[*e].witnesses, &kept).is_some());
        if !consistent {
            continue;
        }
        let maximal = kept
            .iter()
            .all(|e| witness_within(e, &records[e].witnesses, &kept).is_none());
        if maximal {
            outcomes.push(kept);
        }
    }

    let variables = joint.names().to_vec();
    let ambiguous = outcomes.len() > 1;
    let mut out: Vec<Structure> = outcomes
        .iter()
        .map(|kept| assemble(variables.clone(), records.clone(), kept.clone()))
        .collect();
    for s in &mut out {
        s.ambiguous = ambiguous;
        s.candidates = outcomes.clone();
    }
    Ok(out)
}

/// Deterministic choice among candidates: fewest edges, then the largest total
/// mutual information over retained edges, then the lexicographically
/// smallest retained edge list.
pub fn canonical_structure(candidates: Vec<Structure>, tol: f64) -> Result<Structure> {
    if candidates.is_empty() {
        return Err(Error::Internal("no candidate structures".into()));
    }
    let all: Vec<BTreeSet<Edge>> = candidates.iter().map(|s| s.retained.clone()).collect();
    let ambiguous = candidates.len() > 1;
    let tol = tol.max(1e-12);
    let mut best = candidates
        .into_iter()
        .reduce(|best, next| {
            let (nb, nn) = (best.retained.len(), next.retained.len());
            if nn != nb {
                return if nn < nb { next } else { best };
            }
            let (mb, mn) = (best.total_information(), next.total_information());
            if (mn - mb).abs() > tol {
                return if mn > mb { next } else { best };
            }
            let kb: Vec<&Edge> = best.retained.iter().collect();
            let kn: Vec<&Edge> = next.retained.iter().collect();
            if kn < kb {
                next
            } else {
                best
            }
        })
        .expect("non-empty");
    best.ambiguous = ambiguous;
    best.candidates = all;
    Ok(best)
}

impl Structure {
    /// A structure with exactly the given retained edges; removed pairs are
    /// labelled by the witnesses or no-information tests that justify them.
    pub fn pinned(joint: &JointDistribution, retained: &[Edge], tol: f64) -> Result<Structure> {
        for e in retained {
            joint.var_index(e.a())?;
            joint.var_index(e.b())?;
        }
        let records = analyse_pairs(joint, tol)?;
        let kept: BTreeSet<Edge> = retained.iter().cloned().collect();
        let mut s = assemble(joint.names().to_vec(), records, kept.clone());
        s.candidates = vec![kept];
        Ok(s)
    }

    /// Every pair retained, including no-information pairs.
    pub fn complete(joint: &JointDistribution, tol: f64) -> Result<Structure> {
        let pairs = all_pairs(joint)?;
        Structure::pinned(joint, &pairs, tol)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn edges(&self) -> &BTreeMap<Edge, EdgeRecord> {
        &self.edges
    }

    pub fn record(&self, a: &str, b: &str) -> Option<&EdgeRecord> {
        Edge::new(a, b).ok().and_then(|e| self.edges.get(&e))
    }

    pub fn retained(&self) -> &BTreeSet<Edge> {
        &self.retained
    }

    pub fn is_ambiguous(&self) -> bool {
        self.ambiguous
    }

    pub fn candidates(&self) -> &[BTreeSet<Edge>] {
        &self.candidates
    }

    pub fn contains(&self, a: &str, b: &str) -> bool {
        Edge::new(a, b).is_ok_and(|e| self.retained.contains(&e))
    }

    /// Sum of pairwise mutual information over retained edges.
    pub fn total_information(&self) -> f64 {
        self.retained.iter().map(|e| self.edges[e].mutual_information).sum()
    }

    /// Whether a redundancy path may use the step `a -> b`. Retained edges and
    /// no-information edges are usable (the latter carry zero bits); edges
    /// explained by a cascade or dropped by an override are not. Steps involving
    /// a joined variable are always usable.
    pub fn has_edge(&self, a: &VarSet, b: &VarSet) -> bool {
        if !(a.is_singleton() && b.is_singleton()) {
            return true;
        }
        let (x, y) = (&a.names()[0], &b.names()[0]);
        match Edge::new(x.as_str(), y.as_str()).ok().and_then(|e| self.edges.get(&e).map(|r| (e, r))) {
            Some((e, record)) => {
                self.retained.contains(&e) || record.status == EdgeStatus::NoInformation
            }
            None => true,
        }
    }
}
