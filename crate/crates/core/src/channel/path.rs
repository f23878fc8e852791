//! Transmission paths `{source}{mediators...}{destination}` and their tensors.

use std::fmt;

use super::tensor::CausalTensor;
use crate::error::{Error, Result};
use crate::prob::info::{clamp_nonnegative, plogr};
use crate::prob::{JointDistribution, VarSet};

/// An ordered sequence of at least two vertices. Consecutive vertices differ,
/// except that the first segment may be a self-segment `{x}{x}`, which
/// contributes the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<VarSet>,
}

impl Path {
    pub fn new(vertices: Vec<VarSet>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Format("a path needs at least two vertices".into()));
        }
        for (k, w) in vertices.windows(2).enumerate() {
            if k > 0 && w[0] == w[1] {
                return Err(Error::Format(format!(
                    "repeated vertex {{{}}} inside a path; only the first segment may repeat",
                    w[0]
                )));
            }
        }
        Ok(Path { vertices })
    }

    /// Parses `"X,Y,Z"`; joined vertices use `+`, e.g. `"X+Y,Z"`.
    pub fn parse(text: &str) -> Result<Self> {
        Path::new(text.split(',').map(VarSet::parse).collect::<Result<_>>()?)
    }

    pub fn vertices(&self) -> &[VarSet] {
        &self.vertices
    }

    pub fn source(&self) -> &VarSet {
        &self.vertices[0]
    }

    pub fn destination(&self) -> &VarSet {
        self.vertices.last().expect("at least two vertices")
    }

    /// The same vertices traversed in the opposite direction. A leading
    /// self-segment stays leading.
    pub fn reversed(&self) -> Path {
        let mut v = self.vertices.clone();
        if v.len() > 2 && v[0] == v[1] {
            v.remove(0);
            v.reverse();
            let first = v[0].clone();
            v.insert(0, first);
        } else {
            v.reverse();
        }
        Path { vertices: v }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            write!(f, "{{{v}}}")?;
        }
        Ok(())
    }
}

/// Left fold of [`CausalTensor::compose`] over the edge tensors of `path`.
pub fn path_tensor(joint: &JointDistribution, path: &Path) -> Result<CausalTensor> {
    let v = path.vertices();
    let mut acc = edge_tensor(joint, &v[0], &v[1])?;
    for w in v[1..].windows(2) {
        acc = acc.compose(&edge_tensor(joint, &w[0], &w[1])?)?;
    }
    Ok(acc)
}

fn edge_tensor(joint: &JointDistribution, a: &VarSet, b: &VarSet) -> Result<CausalTensor> {
    if a == b {
        Ok(CausalTensor::identity(&joint.domain_of(a)?))
    } else {
        CausalTensor::from_joint(joint, a, b)
    }
}

/// Mutual information carried by a tensor fed with the source marginal of
/// `joint`: `Σ p^i T^k_i log2(T^k_i / q^k)` with `q = p·T`.
pub fn channel_information(joint: &JointDistribution, tensor: &CausalTensor) -> Result<f64> {
    let src = VarSet::new(tensor.source().names().to_vec())?;
    let p = joint.pmf(&src)?;
    let q = tensor.apply(&p)?;
    let mut sum = 0.0;
    for (i, pi) in p.probs().iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (k, t) in tensor.row(i).iter().enumerate() {
            if !t.is_zero() {
                sum += plogr(&(pi * t), &(pi * q.prob(k)));
            }
        }
    }
    Ok(clamp_nonnegative(sum))
}

/// Mutual information of the joint induced by the cascade, not of the
/// observed endpoint joint.
pub fn path_mutual_information(joint: &JointDistribution, path: &Path) -> Result<f64> {
    channel_information(joint, &path_tensor(joint, path)?)
}
