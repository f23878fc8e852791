//! Argument definitions and subcommand dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pidtensor::channel::{path_mutual_information, path_tensor, Path, DEFAULT_TOLERANCE};
use pidtensor::pid::{check_hidden_variable, decompose};
use pidtensor::prob::{JointDistribution, VarSet};
use pidtensor::structure::{canonical_structure, infer_structures, EdgeStatus, Structure};
use pidtensor::te::{embed, te_tensor, transfer_entropy, TeConfig};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::{fixtures, io, report, reproduce};

#[derive(Debug, Parser)]
#[command(name = "pidtensor", version, about = "Causal-tensor partial information decomposition")]
pub struct Cli {
    /// Tolerance for tensor and no-information comparisons in float mode.
    #[arg(long, global = true, env = "PIDTENSOR_TOLERANCE", default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Distribution JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Built-in fixture name (see `fixture list`).
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose the information sources carry about a target.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        target: String,
        /// Comma-separated sources; join variables with `+`, e.g. `X,Y+W`.
        #[arg(long)]
        sources: String,
        /// JSON list of retained edges, replacing inferred structure.
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Infer direct and indirect pairwise associations.
    Infer {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Compose the tensor of a transmission path and its mutual information.
    PathMi {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated vertices, e.g. `X,Y,Z`.
        #[arg(long)]
        path: String,
    },
    /// Transfer entropy between two columns of a time-series CSV.
    Te {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cause: String,
        #[arg(long)]
        effect: String,
        /// History length of the effect.
        #[arg(long = "l", alias = "history", default_value_t = 1)]
        history: usize,
        /// Number of past cause symbols.
        #[arg(long = "m", alias = "cause-length", default_value_t = 1)]
        cause_length: usize,
    },
    /// Test a triple for an unobserved common cause.
    DetectHidden {
        #[command(flatten)]
        input: InputArgs,
        /// Exactly three comma-separated variables `X,Y,Z`.
        #[arg(long)]
        vars: String,
    },
    /// Regenerate the reference tables and compare them with stored values.
    Reproduce {
        #[arg(long)]
        table: Option<u32>,
    },
    /// List or print built-in fixtures.
    Fixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixtureAction {
    List,
    /// Print a fixture as distribution JSON.
    Show { name: String },
    /// Print the structure shipped with a fixture.
    Structure { name: String },
}

fn load(input: &InputArgs) -> Result<JointDistribution> {
    match (&input.input, &input.fixture) {
        (Some(path), None) => io::read_distribution(path),
        (None, Some(name)) => Ok(fixtures::find(name)?.joint()),
        _ => Err(CliError::Usage("give exactly one of --input or --fixture".into())),
    }
}

fn var_list(text: &str) -> Result<Vec<VarSet>> {
    Ok(text.split(',').map(|t| VarSet::parse(t.trim())).collect::<pidtensor::Result<_>>()?)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "stdout".into(), source })
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|source| CliError::Json { origin: "output".into(), source })?;
    text.push('\n');
    emit(out, &text)
}

fn warn(err: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(err, "{text}").map_err(|source| CliError::Io { path: "stderr".into(), source })
}

#[derive(Serialize)]
struct PairJson<'a> {
    a: &'a str,
    b: &'a str,
    mutual_information: f64,
    status: &'a EdgeStatus,
    witnesses: &'a [Vec<String>],
}

#[derive(Serialize)]
struct InferJson<'a> {
    variables: &'a [String],
    structure: Vec<(String, String)>,
    ambiguous: bool,
    candidates: Vec<Vec<(String, String)>>,
    pairs: Vec<PairJson<'a>>,
}

fn edges_of(s: &Structure) -> Vec<(String, String)> {
    s.retained().iter().map(|e| (e.a().to_string(), e.b().to_string())).collect()
}

#[derive(Serialize)]
struct PathJson {
    path: String,
    mutual_information: f64,
    mode: pidtensor::prob::Mode,
    rows: Vec<String>,
    columns: Vec<String>,
    /// `null` for source symbols with zero probability.
    tensor: Vec<Option<Vec<String>>>,
}

#[derive(Serialize)]
struct TeJson<'a> {
    cause: &'a str,
    effect: &'a str,
    history: usize,
    cause_length: usize,
    windows: usize,
    subchannels: usize,
    transfer_entropy: f64,
}

#[derive(Serialize)]
struct HiddenJson<'a> {
    variables: &'a [String],
    #[serde(flatten)]
    verdict: pidtensor::pid::HiddenCauseVerdict,
}

/// Runs one parsed invocation; stdout receives results, stderr warnings.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let tol = cli.tolerance;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::Usage(format!("tolerance must be a non-negative number, got {tol}")));
    }
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Decompose { input, target, sources, structure } => {
            let joint = load(input)?;
            let target = VarSet::parse(target)?;
            let sources = var_list(sources)?;
            let pinned = match structure {
                Some(path) => Some(Structure::pinned(&joint, &io::read_structure(path)?, tol)?),
                None => None,
            };
            let res = decompose(&joint, &target, &sources, pinned.as_ref(), tol)?;
            for w in report::pid_warnings(&res) {
                warn(err, &w)?;
            }
            if json {
                emit_json(out, &res)
            } else {
                emit(out, &report::pid_table(&res))
            }
        }
        Command::Infer { input } => {
            let joint = load(input)?;
            let candidates = infer_structures(&joint, tol)?;
            let chosen = canonical_structure(candidates.clone(), tol)?;
            if json {
                let pairs = chosen
                    .edges()
                    .iter()
                    .map(|(e, r)| PairJson {
                        a: e.a(),
                        b: e.b(),
                        mutual_information: r.mutual_information,
                        status: &r.status,
                        witnesses: &r.witnesses,
                    })
                    .collect();
                emit_json(
                    out,
                    &InferJson {
                        variables: chosen.variables(),
                        structure: edges_of(&chosen),
                        ambiguous: chosen.is_ambiguous(),
                        candidates: candidates.iter().map(edges_of).collect(),
                        pairs,
                    },
                )
            } else {
                if chosen.is_ambiguous() {
                    warn(err, &format!("warning: {} candidate structures fit the data", candidates.len()))?;
                }
                emit(out, &report::structure_report(&candidates, &chosen))
            }
        }
        Command::PathMi { input, path } => {
            let joint = load(input)?;
            let path = Path::new(var_list(path)?)?;
            let tensor = path_tensor(&joint, &path)?;
            let mi = path_mutual_information(&joint, &path)?;
            if json {
                let tensor_rows = (0..tensor.rows())
                    .map(|i| {
                        tensor
                            .is_supported(i)
                            .then(|| tensor.row(i).iter().map(|p| p.to_string()).collect())
                    })
                    .collect();
                emit_json(
                    out,
                    &PathJson {
                        path: path.to_string(),
                        mutual_information: mi,
                        mode: tensor.mode(),
                        rows: (0..tensor.rows()).map(|i| tensor.source().label(i)).collect(),
                        columns: (0..tensor.cols()).map(|j| tensor.destination().label(j)).collect(),
                        tensor: tensor_rows,
                    },
                )
            } else {
                emit(out, &format!("path {path}\n{tensor}I = {} bit\n", report::bits(mi)))
            }
        }
        Command::Te { input, cause, effect, history, cause_length } => {
            let series = io::read_series(input)?;
            let cfg = TeConfig::new(*history, *cause_length)?;
            let emb = embed(&series, cause, effect, cfg)?;
            let mux = te_tensor(&emb)?;
            let te = transfer_entropy(&mux, &emb)?;
            let report = TeJson {
                cause,
                effect,
                history: *history,
                cause_length: *cause_length,
                windows: emb.windows,
                subchannels: mux.supported().count(),
                transfer_entropy: te,
            };
            if json {
                emit_json(out, &report)
            } else {
                emit(
                    out,
                    &format!(
                        "TE({cause} -> {effect}) = {} bit\nhistory {history}, cause length {cause_length}\nwindows {}, sub-channels {}\n",
                        report::bits(te),
                        report.windows,
                        report.subchannels
                    ),
                )
            }
        }
        Command::DetectHidden { input, vars } => {
            let joint = load(input)?;
            let vs = var_list(vars)?;
            if vs.len() != 3 {
                return Err(CliError::Usage(format!("--vars needs three variables, got {}", vs.len())));
            }
            let verdict = check_hidden_variable(&joint, &vs[0], &vs[1], &vs[2], tol)?;
            let names: Vec<String> = vs.iter().map(VarSet::to_string).collect();
            if json {
                emit_json(out, &HiddenJson { variables: &names, verdict })
            } else {
                emit(out, &report::hidden_report(&names, &verdict))
            }
        }
        Command::Reproduce { table } => {
            let rows = reproduce::compare(*table, tol)?;
            if json {
                emit_json(out, &rows)?;
            } else {
                emit(out, &reproduce::render(&rows))?;
            }
            let bad: Vec<&reproduce::Comparison> = rows.iter().filter(|r| !r.ok).collect();
            for r in &bad {
                warn(
                    err,
                    &format!(
                        "mismatch: {} {} {}: computed {:.4}, reference {:.4}",
                        r.section, r.fixture, r.quantity, r.computed, r.reference
                    ),
                )?;
            }
            if bad.is_empty() {
                Ok(())
            } else {
                Err(CliError::Mismatch(bad.len()))
            }
        }
        Command::Fixture { action } => match action {
            FixtureAction::List => {
                let mut text = String::new();
                for f in fixtures::CATALOG {
                    text.push_str(&format!("{:<20} {}\n", f.name, f.description));
                }
                emit(out, &text)
            }
            FixtureAction::Show { name } => {
                let mut text = io::distribution_json(&fixtures::find(name)?.joint());
                text.push('\n');
                emit(out, &text)
            }
            FixtureAction::Structure { name } => match fixtures::find(name)?.pinned_structure() {
                Some(text) => emit(out, text),
                None => Err(CliError::Usage(format!("fixture `{name}` ships no structure"))),
            },
        },
    }
}
