//! Checks that interpret a decomposition: hidden common causes, lattice
//! ordering and overdetermined targets.

use serde::Serialize;

use super::lattice::{covers, NodeColour};
use super::{checked_unique, lattice_redundancies, redundancy, SourceCollection};
use crate::channel::{path_mutual_information, Path};
use crate::error::Result;
use crate::prob::{entropy, interaction_information, mutual_information, JointDistribution, VarSet};
use crate::structure::Structure;

/// Outcome of the unobserved-variable inequality
/// `I(x;y|z) - I(x;y) <= -min[I{x}{y}{z}, I{y}{x}{z}]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HiddenCauseVerdict {
    pub flagged: bool,
    /// Left side minus right side; non-positive when the inequality holds.
    pub margin: f64,
    pub interaction_information: f64,
    pub path_bound: f64,
}

/// Flags a hidden common cause when the interaction information is strictly
/// negative and the inequality holds. A triple where every term vanishes is
/// not flagged.
pub fn check_hidden_variable(
    joint: &JointDistribution,
    x: &VarSet,
    y: &VarSet,
    z: &VarSet,
    tol: f64,
) -> Result<HiddenCauseVerdict> {
    let ii = interaction_information(joint, x, y, z)?;
    let forward = path_mutual_information(joint, &Path::new(vec![x.clone(), y.clone(), z.clone()])?)?;
    let backward = path_mutual_information(joint, &Path::new(vec![y.clone(), x.clone(), z.clone()])?)?;
    let bound = forward.min(backward);
    let margin = ii + bound;
    let tol = tol.max(1e-12);
    Ok(HiddenCauseVerdict {
        flagged: ii < -tol && margin <= tol,
        margin,
        interaction_information: ii,
        path_bound: bound,
    })
}

/// How an ordering relation relates to the node colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderClass {
    Blue,
    Red,
    /// Between a blue and a red node.
    Bridge,
}

/// One cover relation `lower ≤ upper` evaluated on computed redundancies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderCheck {
    pub lower: String,
    pub upper: String,
    pub class: OrderClass,
    pub satisfied: bool,
    /// `R(upper) - R(lower)`; negative when violated.
    pub slack: f64,
}

/// Evaluates every cover relation of the lattice against the redundancies.
pub fn lattice_order_report(
    joint: &JointDistribution,
    structure: &Structure,
    sources: &[VarSet],
    target: &VarSet,
    tol: f64,
) -> Result<Vec<OrderCheck>> {
    let values = lattice_redundancies(joint, structure, sources, target)?;
    let nodes: Vec<_> = values.iter().map(|(n, _)| n.clone()).collect();
    let floor = tol.max(1e-12);
    Ok(covers(&nodes)
        .into_iter()
        .map(|(lo, hi)| {
            let class = match (nodes[lo].colour(), nodes[hi].colour()) {
                (NodeColour::Blue, NodeColour::Blue) => OrderClass::Blue,
                (NodeColour::Red, NodeColour::Red) => OrderClass::Red,
                _ => OrderClass::Bridge,
            };
            let slack = values[hi].1 - values[lo].1;
            OrderCheck {
                lower: nodes[lo].to_string(),
                upper: nodes[hi].to_string(),
                class,
                satisfied: slack >= -floor,
                slack,
            }
        })
        .collect())
}

/// Compares the summed per-source unique information with the target entropy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Overdetermination {
    pub unique_sum: f64,
    pub target_entropy: f64,
    pub negative_forced: bool,
}

/// Sums `I(source; target) - R(sources; target)` over the sources.
pub fn overdetermination_report(
    joint: &JointDistribution,
    structure: &Structure,
    target: &VarSet,
    sources: &[VarSet],
    tol: f64,
) -> Result<Overdetermination> {
    let sc = SourceCollection::new(sources.to_vec(), target.clone())?;
    // a lone source shares nothing, so all of its information counts as unique
    let red = if sources.len() < 2 { 0.0 } else { redundancy(joint, structure, &sc)? };
    let mut unique_sum = 0.0;
    for s in sources {
        unique_sum += checked_unique(s, mutual_information(joint, s, target)?, red)?;
    }
    let target_entropy = entropy(&joint.pmf(target)?);
    Ok(Overdetermination {
        unique_sum,
        target_entropy,
        negative_forced: unique_sum > target_entropy + tol.max(1e-12),
    })
}
