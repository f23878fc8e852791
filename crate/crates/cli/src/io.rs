//! File formats: distribution JSON, structure overrides and time-series CSV.

use std::collections::BTreeMap;
use std::path::Path;

use pidtensor::prob::{Alphabet, JointDistribution, Mode, Prob, Symbol};
use pidtensor::structure::Edge;
use pidtensor::te::TimeSeries;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

/// Key holding the probability in each pmf row.
pub const PROB_KEY: &str = "p";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    pub alphabet: Vec<Symbol>,
}

/// `{"variables": [{"name", "alphabet"}], "mode"?, "pmf": [{"<var>": symbol, "p": "1/4"}]}`.
/// Rows not listed have probability zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionFile {
    pub variables: Vec<VariableSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub pmf: Vec<BTreeMap<String, Value>>,
}

impl DistributionFile {
    pub fn from_joint(joint: &JointDistribution) -> Self {
        let variables = joint
            .names()
            .iter()
            .zip(joint.domain().alphabets())
            .map(|(name, a)| VariableSpec { name: name.clone(), alphabet: a.symbols().to_vec() })
            .collect();
        let pmf = joint
            .support()
            .into_iter()
            .map(|(row, p)| {
                let mut m: BTreeMap<String, Value> = joint
                    .names()
                    .iter()
                    .zip(row)
                    .map(|(n, s)| (n.clone(), serde_json::to_value(s).expect("symbols serialize")))
                    .collect();
                m.insert(PROB_KEY.into(), Value::String(p.to_string()));
                m
            })
            .collect();
        DistributionFile { variables, mode: Some(joint.mode()), pmf }
    }

    pub fn to_joint(&self) -> Result<JointDistribution> {
        let mode = self.mode.unwrap_or(Mode::Exact);
        let names: Vec<String> = self.variables.iter().map(|v| v.name.clone()).collect();
        if names.iter().any(|n| n == PROB_KEY) {
            return Err(pidtensor::Error::Format(format!("`{PROB_KEY}` is reserved for probabilities")).into());
        }
        let alphabets = self
            .variables
            .iter()
            .map(|v| Alphabet::new(v.alphabet.clone()))
            .collect::<pidtensor::Result<Vec<_>>>()?;
        let mut outcomes = Vec::with_capacity(self.pmf.len());
        for (k, row) in self.pmf.iter().enumerate() {
            let bad = |what: String| pidtensor::Error::Format(format!("pmf row {}: {what}", k + 1));
            if let Some(extra) = row.keys().find(|key| *key != PROB_KEY && !names.contains(key)) {
                return Err(pidtensor::Error::Name(extra.clone()).into());
            }
            let symbols = names
                .iter()
                .map(|n| {
                    let v = row.get(n).ok_or_else(|| bad(format!("missing `{n}`")))?;
                    serde_json::from_value::<Symbol>(v.clone())
                        .map_err(|_| bad(format!("`{n}` is not a symbol")))
                })
                .collect::<pidtensor::Result<Vec<_>>>()?;
            let p = match row.get(PROB_KEY) {
                Some(Value::String(s)) => Prob::parse(s, mode)?,
                Some(Value::Number(n)) => Prob::parse(&n.to_string(), mode)?,
                _ => return Err(bad(format!("missing `{PROB_KEY}`")).into()),
            };
            outcomes.push((symbols, p));
        }
        Ok(JointDistribution::from_outcomes(names, Some(alphabets), outcomes)?)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn parse_distribution(text: &str, origin: &str) -> Result<JointDistribution> {
    let file: DistributionFile = serde_json::from_str(text)
        .map_err(|source| CliError::Json { origin: origin.into(), source })?;
    file.to_joint()
}

pub fn read_distribution(path: &Path) -> Result<JointDistribution> {
    parse_distribution(&read(path)?, &path.display().to_string())
}

pub fn distribution_json(joint: &JointDistribution) -> String {
    serde_json::to_string_pretty(&DistributionFile::from_joint(joint)).expect("distribution serializes")
}

/// Structure overrides are a list of retained edges: `[["X", "Y"], ["X", "Z"]]`.
pub fn parse_structure(text: &str, origin: &str) -> Result<Vec<Edge>> {
    let pairs: Vec<(String, String)> = serde_json::from_str(text)
        .map_err(|source| CliError::Json { origin: origin.into(), source })?;
    Ok(pairs.into_iter().map(|(a, b)| Edge::new(a, b)).collect::<pidtensor::Result<_>>()?)
}

pub fn read_structure(path: &Path) -> Result<Vec<Edge>> {
    parse_structure(&read(path)?, &path.display().to_string())
}

/// One column per variable, one row per time step, header of variable names.
pub fn parse_series(text: &str, origin: &str) -> Result<TimeSeries> {
    let csv_err = |source| CliError::Csv { origin: origin.into(), source };
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let names: Vec<String> = reader.headers().map_err(csv_err)?.iter().map(String::from).collect();
    let mut columns: Vec<Vec<Symbol>> = vec![Vec::new(); names.len()];
    for record in reader.records() {
        let record = record.map_err(csv_err)?;
        for (col, field) in columns.iter_mut().zip(record.iter()) {
            col.push(Symbol::parse(field));
        }
    }
    Ok(TimeSeries::new(names, columns, None)?)
}

pub fn read_series(path: &Path) -> Result<TimeSeries> {
    parse_series(&read(path)?, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TBC: &str = r#"{
        "variables": [
            {"name": "X", "alphabet": [0, 1]},
            {"name": "Y", "alphabet": [0, 1]}
        ],
        "pmf": [
            {"X": 0, "Y": 0, "p": "1/4"},
            {"X": 0, "Y": 1, "p": 0.25},
            {"X": 1, "Y": 1, "p": "0.5"}
        ]
    }"#;

    #[test]
    fn decimals_parse_exactly() {
        let j = parse_distribution(TBC, "inline").unwrap();
        assert_eq!(j.mode(), Mode::Exact);
        let probs: Vec<String> = j.probs().iter().map(|p| p.to_string()).collect();
        assert_eq!(probs, ["1/4", "1/4", "0", "1/2"]);
    }

    #[test]
    fn round_trip_is_identical() {
        let j = parse_distribution(TBC, "inline").unwrap();
        let again = parse_distribution(&distribution_json(&j), "again").unwrap();
        assert_eq!(j.probs(), again.probs());
        assert_eq!(j.domain(), again.domain());
    }

    #[test]
    fn rejects_bad_rows() {
        let unnormalized = TBC.replace("\"0.5\"", "\"0.4\"");
        assert!(matches!(
            parse_distribution(&unnormalized, "x"),
            Err(CliError::Analysis(pidtensor::Error::Distribution(_)))
        ));
        let unknown = TBC.replace("\"X\": 1, \"Y\": 1", "\"X\": 1, \"Q\": 1");
        assert!(matches!(parse_distribution(&unknown, "x"), Err(CliError::Analysis(pidtensor::Error::Name(_)))));
        let bad_symbol = TBC.replace("\"X\": 1, \"Y\": 1", "\"X\": 7, \"Y\": 1");
        assert!(parse_distribution(&bad_symbol, "x").is_err());
        assert!(matches!(parse_distribution("{", "x"), Err(CliError::Json { .. })));
    }

    #[test]
    fn structure_and_series() {
        let edges = parse_structure(r#"[["Y", "X"], ["X", "Z"]]"#, "s").unwrap();
        assert_eq!(edges[0], Edge::new("X", "Y").unwrap());
        assert!(parse_structure(r#"[["X", "X"]]"#, "s").is_err());
        let s = parse_series("X, Y\n0, a\n1, b\n1, a\n", "csv").unwrap();
        assert_eq!(s.len(), 3);
        assert!(matches!(parse_series("X,Y\n0\n", "csv"), Err(CliError::Csv { .. })));
    }
}
