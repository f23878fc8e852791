//! The Williams–Beer redundancy lattice over source antichains.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

/// An antichain of source-index subsets, e.g. `{1}{23}`. Indices are 0-based
/// internally and printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeNode {
    parts: Vec<Vec<usize>>,
}

/// Colouring used to group ordering checks: a node is red when every part
/// joins at least two sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeColour {
    Blue,
    Red,
}

impl LatticeNode {
    /// Sorts parts and their members; returns `None` unless the parts form a
    /// non-empty antichain of non-empty sets.
    pub fn new(parts: Vec<Vec<usize>>) -> Option<Self> {
        let mut parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p.dedup();
                p
            })
            .collect();
        parts.sort();
        parts.dedup();
        if parts.is_empty() || parts.iter().any(Vec::is_empty) {
            return None;
        }
        for (a, b) in parts.iter().tuple_combinations() {
            if is_subset(a, b) || is_subset(b, a) {
                return None;
            }
        }
        Some(LatticeNode { parts })
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// `self ≤ other` iff every part of `other` contains some part of `self`.
    pub fn le(&self, other: &LatticeNode) -> bool {
        other.parts.iter().all(|b| self.parts.iter().any(|a| is_subset(a, b)))
    }

    pub fn colour(&self) -> NodeColour {
        if self.parts.iter().all(|p| p.len() >= 2) {
            NodeColour::Red
        } else {
            NodeColour::Blue
        }
    }

    /// Parses `"{1}{2}"` or `"{12}"` (single-digit 1-based indices).
    pub fn parse(text: &str) -> Option<Self> {
        let mut parts = Vec::new();
        for chunk in text.split('}') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let digits = chunk.strip_prefix('{')?;
            let part: Option<Vec<usize>> = digits
                .chars()
                .map(|c| c.to_digit(10).filter(|&d| d >= 1).map(|d| d as usize - 1))
                .collect();
            parts.push(part?);
        }
        LatticeNode::new(parts)
    }
}

impl fmt::Display for LatticeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parts {
            f.write_str("{")?;
            for i in p {
                write!(f, "{}", i + 1)?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// All lattice nodes for `n` sources, ordered so that every node comes after
/// all nodes below it.
pub fn redundancy_lattice(n: usize) -> Vec<LatticeNode> {
    let subsets: Vec<Vec<usize>> = (1..=n).flat_map(|k| (0..n).combinations(k)).collect();
    let mut nodes: Vec<LatticeNode> = Vec::new();
    for k in 1..=subsets.len() {
        for combo in subsets.iter().cloned().combinations(k) {
            if let Some(node) = LatticeNode::new(combo) {
                if !nodes.contains(&node) {
                    nodes.push(node);
                }
            }
        }
    }
    let below = |x: &LatticeNode, all: &[LatticeNode]| all.iter().filter(|m| (*m).le(x)).count();
    let ranks: Vec<usize> = nodes.iter().map(|x| below(x, &nodes)).collect();
    let mut ordered: Vec<(usize, LatticeNode)> = ranks.into_iter().zip(nodes).collect();
    ordered.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.to_string().cmp(&b.1.to_string())));
    ordered.into_iter().map(|(_, n)| n).collect()
}

/// Cover relations `(lower, upper)` of the lattice, as index pairs into `nodes`.
pub fn covers(nodes: &[LatticeNode]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, a) in nodes.iter().enumerate() {
        for (j, b) in nodes.iter().enumerate() {
            if i == j || !a.le(b) {
                continue;
            }
            let between = nodes
                .iter()
                .enumerate()
                .any(|(k, c)| k != i && k != j && a.le(c) && c.le(b));
            if !between {
                out.push((i, j));
            }
        }
    }
    out
}
