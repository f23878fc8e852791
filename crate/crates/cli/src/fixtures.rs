//! Built-in example systems and their pinned structures.

use pidtensor::pid::default_structure;
use pidtensor::prob::{JointDistribution, Prob, Symbol};
use pidtensor::structure::Structure;

use crate::error::{CliError, Result};
use crate::io::parse_structure;

/// A named joint given as weighted outcome rows; weights are normalized by
/// their sum.
#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub variables: &'static [&'static str],
    pub rows: &'static [(&'static [&'static str], i64)],
}

impl Fixture {
    pub fn joint(&self) -> JointDistribution {
        let total: i64 = self.rows.iter().map(|(_, w)| w).sum();
        let outcomes = self
            .rows
            .iter()
            .map(|(r, w)| (r.iter().map(|s| Symbol::parse(s)).collect(), Prob::ratio(*w, total)))
            .collect();
        JointDistribution::from_outcomes(
            self.variables.iter().map(|s| s.to_string()).collect(),
            None,
            outcomes,
        )
        .expect("built-in fixtures are valid")
    }

    /// Retained edges shipped with the fixture, if any.
    pub fn pinned_structure(&self) -> Option<&'static str> {
        match self.name {
            "rnderr" => Some(include_str!("../fixtures/rnderr-structure.json")),
            "unq" => Some(include_str!("../fixtures/unq-structure.json")),
            "neg-synergy" => Some(include_str!("../fixtures/neg-synergy-structure.json")),
            _ => None,
        }
    }

    /// The pinned structure when one ships, otherwise the canonical inferred one.
    pub fn structure(&self, joint: &JointDistribution, tol: f64) -> Result<Structure> {
        match self.pinned_structure() {
            Some(text) => {
                let edges = parse_structure(text, self.name)?;
                Ok(Structure::pinned(joint, &edges, tol)?)
            }
            None => Ok(default_structure(joint, tol)?),
        }
    }
}

const XYZ: &[&str] = &["X", "Y", "Z"];

pub const CATALOG: &[Fixture] = &[
    Fixture {
        name: "tbc",
        description: "two-bit copy: Z = (X, Y) for independent uniform bits",
        variables: XYZ,
        rows: &[
            (&["0", "0", "(0,0)"], 1),
            (&["0", "1", "(0,1)"], 1),
            (&["1", "0", "(1,0)"], 1),
            (&["1", "1", "(1,1)"], 1),
        ],
    },
    Fixture {
        name: "neg-synergy",
        description: "observed part of a system with a hidden common cause",
        variables: XYZ,
        rows: &[(&["0", "0", "0"], 1), (&["0", "1", "0"], 1), (&["1", "1", "0"], 1), (&["1", "1", "1"], 1)],
    },
    Fixture {
        name: "neg-synergy-hidden",
        description: "neg-synergy with its common cause Zt = 2*Z1 + Z2 observed",
        variables: &["X", "Y", "Z", "Zt"],
        rows: &[
            (&["0", "0", "0", "0"], 1),
            (&["0", "1", "0", "1"], 1),
            (&["1", "1", "0", "2"], 1),
            (&["1", "1", "1", "3"], 1),
        ],
    },
    Fixture {
        name: "dyadic",
        description: "pairwise shared bits",
        variables: XYZ,
        rows: &[
            (&["0", "0", "0"], 1),
            (&["0", "2", "1"], 1),
            (&["1", "0", "2"], 1),
            (&["1", "2", "3"], 1),
            (&["2", "1", "0"], 1),
            (&["2", "3", "1"], 1),
            (&["3", "1", "2"], 1),
            (&["3", "3", "3"], 1),
        ],
    },
    Fixture {
        name: "triadic",
        description: "one bit shared by all three plus an XOR constraint",
        variables: XYZ,
        rows: &[
            (&["0", "0", "0"], 1),
            (&["1", "1", "1"], 1),
            (&["0", "2", "2"], 1),
            (&["1", "3", "3"], 1),
            (&["2", "0", "2"], 1),
            (&["3", "1", "3"], 1),
            (&["2", "2", "0"], 1),
            (&["3", "3", "1"], 1),
        ],
    },
    Fixture {
        name: "pwunq",
        description: "pointwise unique information",
        variables: XYZ,
        rows: &[(&["0", "1", "1"], 1), (&["1", "0", "1"], 1), (&["0", "2", "2"], 1), (&["2", "0", "2"], 1)],
    },
    Fixture {
        name: "rnderr",
        description: "Y is a noisy copy of X and Z = X",
        variables: XYZ,
        rows: &[(&["0", "0", "0"], 3), (&["1", "1", "1"], 3), (&["0", "1", "0"], 1), (&["1", "0", "1"], 1)],
    },
    Fixture {
        name: "unq",
        description: "Z = X with Y independent",
        variables: XYZ,
        rows: &[(&["0", "0", "0"], 1), (&["1", "1", "1"], 1), (&["0", "1", "0"], 1), (&["1", "0", "1"], 1)],
    },
    Fixture {
        name: "and",
        description: "Z = X AND Y",
        variables: XYZ,
        rows: &[(&["0", "0", "0"], 1), (&["1", "0", "0"], 1), (&["0", "1", "0"], 1), (&["1", "1", "1"], 1)],
    },
    Fixture {
        name: "xor",
        description: "Z = X XOR Y",
        variables: XYZ,
        rows: &[(&["0", "0", "0"], 1), (&["0", "1", "1"], 1), (&["1", "0", "1"], 1), (&["1", "1", "0"], 1)],
    },
    Fixture {
        name: "sum",
        description: "Z = X + Y",
        variables: XYZ,
        rows: &[(&["0", "0", "0"], 1), (&["0", "1", "1"], 1), (&["1", "0", "1"], 1), (&["1", "1", "2"], 1)],
    },
    Fixture {
        name: "rauh4",
        description: "sources X, Y, W = X XOR Y; target T = (X, Y, W)",
        variables: &["X", "Y", "W", "T"],
        rows: &[
            (&["0", "0", "0", "(0,0,0)"], 1),
            (&["0", "1", "1", "(0,1,1)"], 1),
            (&["1", "0", "1", "(1,0,1)"], 1),
            (&["1", "1", "0", "(1,1,0)"], 1),
        ],
    },
];

pub fn find(name: &str) -> Result<&'static Fixture> {
    CATALOG.iter().find(|f| f.name == name).ok_or_else(|| {
        let known: Vec<&str> = CATALOG.iter().map(|f| f.name).collect();
        CliError::Usage(format!("unknown fixture `{name}` (known: {})", known.join(", ")))
    })
}
