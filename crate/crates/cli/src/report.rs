//! Text rendering of analysis results. Values are rounded here only; JSON
//! output carries full precision.

use std::fmt::Write;

use pidtensor::pid::{HiddenCauseVerdict, PidResult};
use pidtensor::structure::{EdgeStatus, Structure};

/// Four decimals, with values that round to zero printed unsigned.
pub fn bits(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// Lattice atoms from the top node down, one row per node.
pub fn pid_table(res: &PidResult) -> String {
    let mut s = String::new();
    let legend: Vec<String> =
        res.sources.iter().enumerate().map(|(k, n)| format!("{} = {n}", k + 1)).collect();
    writeln!(s, "target {}; sources {}", res.target, legend.join(", ")).unwrap();
    let width = res.nodes.iter().map(|n| n.node.len()).max().unwrap_or(4).max(4);
    writeln!(s, "{:<width$}  {:>8}  {:>8}", "node", "atom", "R").unwrap();
    for n in res.nodes.iter().rev() {
        writeln!(s, "{:<width$}  {:>8}  {:>8}", n.node, bits(n.atom), bits(n.redundancy)).unwrap();
    }
    writeln!(s).unwrap();
    writeln!(s, "total      {}", bits(res.total)).unwrap();
    writeln!(s, "redundancy {}", bits(res.redundancy)).unwrap();
    for (name, u) in &res.unique {
        writeln!(s, "unique {name:<3} {}", bits(*u)).unwrap();
    }
    writeln!(s, "synergy    {}", bits(res.synergy)).unwrap();
    writeln!(s, "structure  {}", edge_list(&res.structure)).unwrap();
    s
}

fn edge_list(edges: &[(String, String)]) -> String {
    if edges.is_empty() {
        "(no edges)".into()
    } else {
        edges.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(", ")
    }
}

/// Warning lines for flagged decompositions.
pub fn pid_warnings(res: &PidResult) -> Vec<String> {
    let mut w = Vec::new();
    if res.flags.structural_ambiguity {
        let mut block = String::from("warning: structure is ambiguous; candidates:");
        for c in &res.candidates {
            write!(block, "\n  {}", edge_list(c)).unwrap();
        }
        write!(block, "\n  using {}", edge_list(&res.structure)).unwrap();
        w.push(block);
    }
    if res.flags.negative_atom {
        w.push("warning: at least one atom is negative".into());
    }
    if res.flags.hidden_cause_warning {
        w.push("warning: the sources and target are consistent with an unobserved common cause".into());
    }
    w
}

pub fn structure_report(candidates: &[Structure], chosen: &Structure) -> String {
    let mut s = String::new();
    writeln!(s, "variables {}", chosen.variables().join(", ")).unwrap();
    writeln!(s, "{:<8} {:>8}  status", "pair", "I").unwrap();
    for (e, r) in chosen.edges() {
        let status = match &r.status {
            EdgeStatus::Direct => "direct".to_string(),
            EdgeStatus::Indirect { via } => format!("indirect via {}", via.join(", ")),
            EdgeStatus::NoInformation => "no information".to_string(),
            EdgeStatus::Removed => "removed".to_string(),
        };
        writeln!(s, "{:<8} {:>8}  {status}", e.to_string(), bits(r.mutual_information)).unwrap();
    }
    writeln!(s, "structure  {}", retained(chosen)).unwrap();
    writeln!(s, "candidates {}", candidates.len()).unwrap();
    if chosen.is_ambiguous() {
        for c in candidates {
            writeln!(s, "  {}", retained(c)).unwrap();
        }
    }
    s
}

fn retained(s: &Structure) -> String {
    let pairs: Vec<(String, String)> =
        s.retained().iter().map(|e| (e.a().to_string(), e.b().to_string())).collect();
    edge_list(&pairs)
}

pub fn hidden_report(vars: &[String], v: &HiddenCauseVerdict) -> String {
    let mut s = String::new();
    let (x, y, z) = (&vars[0], &vars[1], &vars[2]);
    writeln!(s, "I({x};{y}|{z}) - I({x};{y}) = {}", bits(v.interaction_information)).unwrap();
    writeln!(s, "min path information       = {}", bits(v.path_bound)).unwrap();
    writeln!(s, "margin                     = {}", bits(v.margin)).unwrap();
    writeln!(s, "hidden common cause        {}", if v.flagged { "flagged" } else { "not flagged" })
        .unwrap();
    s
}
