//! Path-based redundancy, unique information, synergy and the lattice
//! decomposition built from them.

pub mod diagnostics;
pub mod lattice;

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::channel::{path_mutual_information, Path};
use crate::error::{Error, Result};
use crate::prob::info::NEGATIVE_FLOOR;
use crate::prob::{mutual_information, JointDistribution, VarSet};
use crate::structure::{canonical_structure, infer_structures, Structure};

pub use diagnostics::{
    check_hidden_variable, lattice_order_report, overdetermination_report, HiddenCauseVerdict,
    OrderCheck, OrderClass, Overdetermination,
};
pub use lattice::{covers, redundancy_lattice, LatticeNode, NodeColour};

/// Source elements (an antichain under inclusion) and a disjoint target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceCollection {
    elements: Vec<VarSet>,
    target: VarSet,
}

impl SourceCollection {
    pub fn new(elements: Vec<VarSet>, target: VarSet) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Format("at least one source is required".into()));
        }
        for (a, b) in elements.iter().tuple_combinations() {
            if a.is_subset(b) || b.is_subset(a) {
                return Err(Error::Format(format!("sources {{{a}}} and {{{b}}} are nested")));
            }
        }
        for e in &elements {
            if let Some(n) = e.overlap(&target) {
                return Err(Error::Overlap(n.to_string()));
            }
        }
        Ok(SourceCollection { elements, target })
    }

    pub fn elements(&self) -> &[VarSet] {
        &self.elements
    }

    pub fn target(&self) -> &VarSet {
        &self.target
    }
}

/// Every permutation path through all source elements into the target whose
/// steps exist in `structure`. A single element yields the self-path `{x}{x}{t}`.
pub fn redundancy_paths(structure: &Structure, sources: &SourceCollection) -> Result<Vec<Path>> {
    let el = sources.elements();
    let t = sources.target();
    if el.len() == 1 {
        return Ok(vec![Path::new(vec![el[0].clone(), el[0].clone(), t.clone()])?]);
    }
    let mut out = Vec::new();
    for perm in el.iter().permutations(el.len()) {
        let mut vertices: Vec<VarSet> = perm.into_iter().cloned().collect();
        vertices.push(t.clone());
        if vertices.windows(2).all(|w| structure.has_edge(&w[0], &w[1])) {
            out.push(Path::new(vertices)?);
        }
    }
    Ok(out)
}

/// The weakest permutation path; zero when no path exists.
pub fn redundancy(
    joint: &JointDistribution,
    structure: &Structure,
    sources: &SourceCollection,
) -> Result<f64> {
    let mut best: Option<f64> = None;
    for p in redundancy_paths(structure, sources)? {
        let mi = path_mutual_information(joint, &p)?;
        best = Some(best.map_or(mi, |b| b.min(mi)));
    }
    Ok(best.unwrap_or(0.0))
}

fn checked_unique(source: &VarSet, mi: f64, red: f64) -> Result<f64> {
    let u = mi - red;
    if u < -NEGATIVE_FLOOR {
        return Err(Error::Invariant(format!(
            "unique information of {{{source}}} is negative ({u:.3e}): redundancy {red} exceeds I = {mi}"
        )));
    }
    Ok(u.max(0.0))
}

/// `I(source_k; target) - R(sources; target)`.
pub fn unique(
    joint: &JointDistribution,
    structure: &Structure,
    source_k: &VarSet,
    sources: &SourceCollection,
) -> Result<f64> {
    if !sources.elements().contains(source_k) {
        return Err(Error::Format(format!("{{{source_k}}} is not one of the sources")));
    }
    let mi = mutual_information(joint, source_k, sources.target())?;
    checked_unique(source_k, mi, redundancy(joint, structure, sources)?)
}

/// `I(sources; target) - Σ uniques - R`; may be negative.
pub fn synergy(
    joint: &JointDistribution,
    structure: &Structure,
    sources: &SourceCollection,
) -> Result<f64> {
    if sources.elements().len() < 2 {
        return Err(Error::Format("synergy needs at least two sources".into()));
    }
    let joined = joined(sources.elements());
    let total = mutual_information(joint, &joined, sources.target())?;
    let red = redundancy(joint, structure, sources)?;
    let mut uniques = 0.0;
    for s in sources.elements() {
        let mi = mutual_information(joint, s, sources.target())?;
        uniques += checked_unique(s, mi, red)?;
    }
    Ok(total - uniques - red)
}

fn joined(sets: &[VarSet]) -> VarSet {
    sets.iter().skip(1).fold(sets[0].clone(), |acc, s| acc.union(s))
}

/// Source elements realised by a lattice node: one (joined) variable per part.
pub fn node_sources(
    node: &LatticeNode,
    sources: &[VarSet],
    target: &VarSet,
) -> Result<SourceCollection> {
    let elements = node
        .parts()
        .iter()
        .map(|part| {
            let sets: Vec<VarSet> = part.iter().map(|&i| sources[i].clone()).collect();
            joined(&sets)
        })
        .collect();
    SourceCollection::new(elements, target.clone())
}

/// Cumulative redundancy of every lattice node, in lattice order.
pub fn lattice_redundancies(
    joint: &JointDistribution,
    structure: &Structure,
    sources: &[VarSet],
    target: &VarSet,
) -> Result<Vec<(LatticeNode, f64)>> {
    redundancy_lattice(sources.len())
        .into_iter()
        .map(|node| {
            let sc = node_sources(&node, sources, target)?;
            let r = redundancy(joint, structure, &sc)?;
            Ok((node, r))
        })
        .collect()
}

/// Möbius inversion of cumulative values over the lattice (given in lattice order).
pub fn mobius_atoms(cumulative: &[(LatticeNode, f64)]) -> Vec<f64> {
    let mut atoms: Vec<f64> = Vec::with_capacity(cumulative.len());
    for (k, (node, r)) in cumulative.iter().enumerate() {
        let below: f64 = cumulative[..k]
            .iter()
            .zip(&atoms)
            .filter(|((m, _), _)| m.le(node))
            .map(|(_, a)| a)
            .sum();
        atoms.push(r - below);
    }
    atoms
}

/// Diagnostic flags attached to a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PidFlags {
    pub negative_atom: bool,
    pub hidden_cause_warning: bool,
    pub structural_ambiguity: bool,
}

/// One lattice node with its cumulative redundancy and its atom.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeValue {
    pub node: String,
    pub redundancy: f64,
    pub atom: f64,
}

/// Full decomposition of `I(sources; target)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PidResult {
    pub sources: Vec<String>,
    pub target: String,
    pub total: f64,
    pub redundancy: f64,
    pub unique: BTreeMap<String, f64>,
    pub synergy: f64,
    /// Lattice nodes bottom-up.
    pub nodes: Vec<NodeValue>,
    pub flags: PidFlags,
    /// Retained edges of the structure used, as name pairs.
    pub structure: Vec<(String, String)>,
    /// All candidate structures when inference was ambiguous.
    pub candidates: Vec<Vec<(String, String)>>,
}

impl PidResult {
    pub fn atom(&self, label: &str) -> Option<f64> {
        self.nodes.iter().find(|n| n.node == label).map(|n| n.atom)
    }

    pub fn cumulative(&self, label: &str) -> Option<f64> {
        self.nodes.iter().find(|n| n.node == label).map(|n| n.redundancy)
    }
}

/// The inferred structure chosen by [`canonical_structure`].
pub fn default_structure(joint: &JointDistribution, tol: f64) -> Result<Structure> {
    canonical_structure(infer_structures(joint, tol)?, tol)
}

/// Decomposes `I(sources; target)` over the 2- or 3-source lattice. Without an
/// explicit structure the canonical inferred structure is used.
pub fn decompose(
    joint: &JointDistribution,
    target: &VarSet,
    sources: &[VarSet],
    structure: Option<&Structure>,
    tol: f64,
) -> Result<PidResult> {
    if !(2..=3).contains(&sources.len()) {
        return Err(Error::NotSupported(format!(
            "decomposition over {} sources; only 2 or 3 are supported",
            sources.len()
        )));
    }
    let sc = SourceCollection::new(sources.to_vec(), target.clone())?;
    for (a, b) in sources.iter().tuple_combinations() {
        if let Some(n) = a.overlap(b) {
            return Err(Error::Overlap(n.to_string()));
        }
    }
    let owned;
    let structure = match structure {
        Some(s) => s,
        None => {
            owned = default_structure(joint, tol)?;
            &owned
        }
    };

    let cumulative = lattice_redundancies(joint, structure, sources, target)?;
    let atoms = mobius_atoms(&cumulative);
    let red = cumulative[0].1;
    let total = mutual_information(joint, &joined(sources), target)?;
    let mut unique = BTreeMap::new();
    let mut unique_sum = 0.0;
    for s in sc.elements() {
        let mi = mutual_information(joint, s, target)?;
        let u = checked_unique(s, mi, red)?;
        unique_sum += u;
        unique.insert(s.to_string(), u);
    }
    let synergy = total - unique_sum - red;

    let floor = tol.max(NEGATIVE_FLOOR);
    let hidden = if sources.len() == 2 {
        check_hidden_variable(joint, &sources[0], &sources[1], target, tol)?.flagged
    } else {
        false
    };
    let flags = PidFlags {
        negative_atom: atoms.iter().any(|a| *a < -floor),
        hidden_cause_warning: hidden,
        structural_ambiguity: structure.is_ambiguous(),
    };
    let pairs = |set: &std::collections::BTreeSet<crate::structure::Edge>| {
        set.iter().map(|e| (e.a().to_string(), e.b().to_string())).collect::<Vec<_>>()
    };
    Ok(PidResult {
        sources: sources.iter().map(VarSet::to_string).collect(),
        target: target.to_string(),
        total,
        redundancy: red,
        unique,
        synergy,
        nodes: cumulative
            .iter()
            .zip(&atoms)
            .map(|((n, r), a)| NodeValue { node: n.to_string(), redundancy: *r, atom: *a })
            .collect(),
        flags,
        structure: pairs(structure.retained()),
        candidates: if structure.is_ambiguous() {
            structure.candidates().iter().map(pairs).collect()
        } else {
            Vec::new()
        },
    })
}
