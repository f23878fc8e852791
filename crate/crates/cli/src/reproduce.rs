//! Regenerates the reference decomposition tables and narrative values and
//! diffs them against stored expectations.

use std::fmt::Write;

use pidtensor::channel::{path_mutual_information, Path};
use pidtensor::pid::{decompose, default_structure, redundancy, SourceCollection};
use pidtensor::prob::{interaction_information, mutual_information, VarSet};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::fixtures;

/// Largest accepted difference; reference tables are printed to two decimals.
pub const MATCH_TOLERANCE: f64 = 0.005;

/// Two-source nodes in the order the reference tables list them.
pub const NODES: [&str; 4] = ["{12}", "{2}", "{1}", "{1}{2}"];

pub struct AtomReference {
    pub table: u32,
    pub fixture: &'static str,
    pub atoms: [f64; 4],
}

pub const ATOM_REFERENCES: &[AtomReference] = &[
    AtomReference { table: 5, fixture: "pwunq", atoms: [0.0, 0.5, 0.5, 0.0] },
    AtomReference { table: 5, fixture: "rnderr", atoms: [0.0, 0.0, 0.811, 0.189] },
    AtomReference { table: 5, fixture: "unq", atoms: [0.0, 0.0, 1.0, 0.0] },
    AtomReference { table: 5, fixture: "and", atoms: [0.19, 0.31, 0.31, 0.0] },
    AtomReference { table: 5, fixture: "tbc", atoms: [0.0, 1.0, 1.0, 0.0] },
    AtomReference { table: 10, fixture: "xor", atoms: [1.0, 0.0, 0.0, 0.0] },
    AtomReference { table: 12, fixture: "sum", atoms: [0.5, 0.5, 0.5, 0.0] },
];

pub const TABLES: [u32; 3] = [5, 10, 12];

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub section: String,
    pub fixture: String,
    pub quantity: String,
    pub computed: f64,
    pub reference: f64,
    pub ok: bool,
}

impl Comparison {
    fn new(section: String, fixture: &str, quantity: impl Into<String>, computed: f64, reference: f64) -> Self {
        Comparison {
            section,
            fixture: fixture.into(),
            quantity: quantity.into(),
            computed,
            reference,
            ok: (computed - reference).abs() <= MATCH_TOLERANCE,
        }
    }
}

fn v(name: &str) -> VarSet {
    VarSet::single(name)
}

fn atom_rows(table: u32, tol: f64) -> Result<Vec<Comparison>> {
    let mut out = Vec::new();
    for r in ATOM_REFERENCES.iter().filter(|r| r.table == table) {
        let f = fixtures::find(r.fixture)?;
        let joint = f.joint();
        let structure = f.structure(&joint, tol)?;
        let res = decompose(&joint, &v("Z"), &[v("X"), v("Y")], Some(&structure), tol)?;
        for (node, expected) in NODES.iter().zip(r.atoms) {
            let got = res.atom(node).expect("two-source node");
            out.push(Comparison::new(format!("table {table}"), r.fixture, *node, got, expected));
        }
    }
    Ok(out)
}

fn narrative_rows(tol: f64) -> Result<Vec<Comparison>> {
    let section = || "narrative".to_string();
    let path_mi = |joint, text: &str| -> Result<f64> {
        Ok(path_mutual_information(joint, &Path::parse(text)?)?)
    };
    let mut out = Vec::new();

    let tbc = fixtures::find("tbc")?.joint();
    out.push(Comparison::new(section(), "tbc", "I{x}{y}{z}", path_mi(&tbc, "X,Y,Z")?, 0.0));

    let neg = fixtures::find("neg-synergy")?.joint();
    out.push(Comparison::new(section(), "neg-synergy", "I{x}{y}{z}", path_mi(&neg, "X,Y,Z")?, 0.0271));
    let ii = interaction_information(&neg, &v("X"), &v("Y"), &v("Z"))?;
    out.push(Comparison::new(section(), "neg-synergy", "I(X;Y|Z) - I(X;Y)", ii, -0.1226));

    let dyadic = fixtures::find("dyadic")?.joint();
    let s = default_structure(&dyadic, tol)?;
    let sc = SourceCollection::new(vec![v("X"), v("Y")], v("Z"))?;
    out.push(Comparison::new(section(), "dyadic", "R(X,Y;Z)", redundancy(&dyadic, &s, &sc)?, 0.0));

    let triadic = fixtures::find("triadic")?.joint();
    let gap = path_mi(&triadic, "X,Y,Z")? - mutual_information(&triadic, &v("X"), &v("Z"))?;
    out.push(Comparison::new(section(), "triadic", "I{x}{y}{z} - I(X;Z)", gap, 0.0));
    Ok(out)
}

/// Every comparison for one table, or all tables plus narrative values.
pub fn compare(table: Option<u32>, tol: f64) -> Result<Vec<Comparison>> {
    match table {
        Some(t) if TABLES.contains(&t) => atom_rows(t, tol),
        Some(t) => Err(CliError::Usage(format!(
            "no reproducible table {t} (available: 5, 10, 12)"
        ))),
        None => {
            let mut all = Vec::new();
            for t in TABLES {
                all.extend(atom_rows(t, tol)?);
            }
            all.extend(narrative_rows(tol)?);
            Ok(all)
        }
    }
}

pub fn render(rows: &[Comparison]) -> String {
    let mut s = String::new();
    let mut section = "";
    for r in rows {
        if r.section != section {
            if !section.is_empty() {
                writeln!(s).unwrap();
            }
            section = &r.section;
            writeln!(s, "{section}").unwrap();
            writeln!(
                s,
                "{:<12} {:<20} {:>9} {:>9} {:>7}",
                "fixture", "quantity", "computed", "reference", "status"
            )
            .unwrap();
        }
        writeln!(
            s,
            "{:<12} {:<20} {:>9.4} {:>9.4} {:>7}",
            r.fixture,
            r.quantity,
            r.computed,
            r.reference,
            if r.ok { "ok" } else { "DIFF" }
        )
        .unwrap();
    }
    s
}
