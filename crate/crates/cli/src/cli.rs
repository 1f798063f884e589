use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use moncp_core::ControlModel;

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "moncp",
    version,
    about = "Multi-objective driver-node identification on gene networks"
)]
pub struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a solver on one instance and write its result document.
    #[command(args_override_self = true)]
    Solve(SolveArgs),
    /// Enumerate the exact Pareto front of a small instance.
    #[command(args_override_self = true)]
    Oracle(OracleArgs),
    /// Hypervolume, IGD and rank-sum comparisons over result documents.
    #[command(args_override_self = true)]
    Metrics(MetricsArgs),
    /// Derive driver genes from a solution set and rank drug combinations.
    #[command(name = "evaluate-drugs", args_override_self = true)]
    EvaluateDrugs(DrugArgs),
    /// Generate a seeded random network and label file.
    #[command(name = "gen-synthetic", args_override_self = true)]
    GenSynthetic(SynthArgs),
    /// Replay the command recorded in a run manifest.
    Rerun(RerunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Oracle(_) => "oracle",
            Command::Metrics(_) => "metrics",
            Command::EvaluateDrugs(_) => "evaluate-drugs",
            Command::GenSynthetic(_) => "gen-synthetic",
            Command::Rerun(_) => "rerun",
        }
    }
}

fn parse_model(s: &str) -> Result<ControlModel, String> {
    s.parse::<ControlModel>().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Edge list: two node identifiers per line.
    #[arg(long)]
    pub network: PathBuf,
    /// Optional node list (one identifier per line) to keep isolated nodes.
    #[arg(long)]
    pub nodes: Option<PathBuf>,
    #[arg(long, overrides_with = "undirected")]
    pub directed: bool,
    #[arg(long, overrides_with = "directed")]
    pub undirected: bool,
    /// Control model: mds, dfvs or ncua.
    #[arg(long, value_parser = parse_model)]
    pub model: ControlModel,
}

impl InstanceArgs {
    /// Explicit flag wins; otherwise the model's natural graph type.
    pub fn is_directed(&self) -> bool {
        if self.directed {
            true
        } else if self.undirected {
            false
        } else {
            self.model.requires_directed()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    #[value(name = "lscv-mcea")]
    LscvMcea,
    #[value(name = "nsga2-cdp")]
    Nsga2Cdp,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Prior target list: one identifier per line, optional 0/1 flag.
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, value_enum, default_value = "lscv-mcea")]
    pub algo: Algorithm,
    #[arg(long, default_value_t = 300)]
    pub pop: usize,
    #[arg(long, default_value_t = 90)]
    pub aux: usize,
    /// Function-evaluation budget.
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub disable_subpop1: bool,
    #[arg(long)]
    pub disable_subpop2: bool,
    /// Both auxiliary populations off.
    #[arg(long)]
    pub nopops: bool,
    #[arg(long)]
    pub disable_rankings: bool,
    /// Constrained dominance instead of epsilon levels in the main population.
    #[arg(long)]
    pub cdp_main: bool,
    #[arg(long)]
    pub eps0: Option<f64>,
    #[arg(long, default_value_t = 0.8)]
    pub eps_fraction: f64,
    #[arg(long, default_value_t = 2.0)]
    pub eps_cp: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rank_cv_weight: f64,
    #[arg(long, default_value_t = 0.5)]
    pub swap_prob: f64,
    /// Defaults to 1/n.
    #[arg(long)]
    pub mutation_rate: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Omit the per-generation trace from the result.
    #[arg(long)]
    pub no_trace: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Without labels every node counts as a non-target.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long, default_value_t = moncp_core::oracle::DEFAULT_LIMIT)]
    pub limit: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct MetricsArgs {
    /// Result document, optionally prefixed `GROUP=`; repeatable. Without a
    /// prefix the document's algorithm label is the group.
    #[arg(long = "result", required = true)]
    pub results: Vec<String>,
    /// Reference front: JSON document with a `pf` array, or `f1<TAB>f2` lines.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Use the non-dominated union of all result fronts as the reference.
    #[arg(long)]
    pub union_reference: bool,
    /// Output prefix; writes `<prefix>.tsv` and `<prefix>.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct DrugArgs {
    /// Result document whose solution set is used.
    #[arg(long, conflicts_with = "ps", required_unless_present = "ps")]
    pub result: Option<PathBuf>,
    /// Plain solution set: one solution per line, gene names separated by
    /// commas or whitespace.
    #[arg(long)]
    pub ps: Option<PathBuf>,
    /// Combinations: `id<TAB>label<TAB>gene1,gene2,...`.
    #[arg(long)]
    pub combos: PathBuf,
    #[arg(long, default_value_t = moncp_core::metrics::DRIVER_THRESHOLD)]
    pub threshold: f64,
    /// Output prefix; writes `<prefix>.tsv` and `<prefix>.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphType {
    Er,
    Ba,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub nodes: usize,
    #[arg(long = "type", value_enum)]
    pub kind: GraphType,
    /// Edge probability (er).
    #[arg(long)]
    pub p: Option<f64>,
    /// Edges per arriving node (ba).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub directed: bool,
    #[arg(long, default_value_t = 0.2)]
    pub label_frac: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output prefix; writes `<prefix>.edges`, `<prefix>.nodes`, `<prefix>.labels`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct RerunArgs {
    /// Manifest written next to an earlier output.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Redirect the primary output instead of overwriting the recorded one.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

const SUBCOMMANDS: [&str; 6] = [
    "solve",
    "oracle",
    "metrics",
    "evaluate-drugs",
    "gen-synthetic",
    "rerun",
];

/// Replaces `--config FILE` by the flags the file spells out. They are
/// inserted right after the subcommand name, so anything given on the
/// command line overrides them.
pub fn expand_config(argv: Vec<String>) -> CliResult<Vec<String>> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut config: Option<String> = None;
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            let path = it
                .next()
                .ok_or_else(|| CliError::Usage("--config needs a file path".into()))?;
            config = Some(path);
        } else if let Some(path) = arg.strip_prefix("--config=") {
            config = Some(path.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = config else {
        return Ok(rest);
    };
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
        path: PathBuf::from(&path),
        source,
    })?;
    let injected = config_flags(&text, Path::new(&path))?;
    let at = rest
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.as_str()))
        .ok_or_else(|| CliError::Usage("--config given without a subcommand".into()))?;
    rest.splice(at + 1..at + 1, injected);
    Ok(rest)
}

/// `key = value` lines; `true`/`false` toggle bare flags.
pub fn config_flags(text: &str, path: &Path) -> CliResult<Vec<String>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Input(format!(
                "{}:{}: expected key=value",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        match value {
            "true" | "yes" | "on" => out.push(format!("--{key}")),
            "false" | "no" | "off" => {}
            _ => {
                out.push(format!("--{key}"));
                out.push(value.to_string());
            }
        }
    }
    Ok(out)
}
