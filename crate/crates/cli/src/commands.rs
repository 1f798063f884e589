use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use moncp_core::baselines::nsga2_cdp_solve;
use moncp_core::graph::{parse_edge_list_with_nodes, Graph};
use moncp_core::metrics::{
    auc, gene_frequency, hypervolume, igd, parse_drug_combinations, rank_drug_combinations,
    rank_sum_compare, select_drivers, union_reference_front, Bounds, Front,
};
use moncp_core::oracle::enumerate_pareto_threads;
use moncp_core::problem::{load_labels, DecisionVector, LabelVector};
use moncp_core::synth::{generate, GraphKind, SyntheticSpec};
use moncp_core::{Error, ProblemInstance, SolverConfig};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cli::{
    Algorithm, Cli, Command, DrugArgs, GraphType, InstanceArgs, MetricsArgs, OracleArgs, RerunArgs,
    SolveArgs, SynthArgs,
};
use crate::error::{CliError, CliResult};
use crate::manifest::{self, ManifestHeader, Recorder};
use crate::report::{
    DrugDoc, FrontSource, GroupComparison, MetricsDoc, OracleDoc, ResultDoc, RunMetrics,
};

/// Exit status of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    EmptyFeasibleSet,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::EmptyFeasibleSet => 2,
        }
    }
}

/// The original command line and its config-expanded form, minus the
/// program name.
pub struct Invocation {
    pub argv: Vec<String>,
    pub args: Vec<String>,
}

pub fn dispatch(command: Command, inv: &Invocation) -> CliResult<Outcome> {
    match command {
        Command::Solve(a) => solve(a, inv),
        Command::Oracle(a) => oracle(a, inv),
        Command::Metrics(a) => metrics(a, inv),
        Command::EvaluateDrugs(a) => evaluate_drugs(a, inv),
        Command::GenSynthetic(a) => gen_synthetic(a, inv),
        Command::Rerun(a) => rerun(a, inv),
    }
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s.into_bytes()
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Recorded arguments, with the seed made explicit when it was drawn.
fn with_seed(inv: &Invocation, given: Option<u64>, seed: u64) -> Vec<String> {
    let mut args = inv.args.clone();
    if given.is_none() {
        args.push("--seed".into());
        args.push(seed.to_string());
    }
    args
}

fn finish(
    rec: Recorder,
    base: &Path,
    inv: &Invocation,
    resolved_args: Vec<String>,
    config: serde_json::Value,
    seed: Option<u64>,
    threads: Option<usize>,
) -> CliResult<()> {
    let command = resolved_args.first().cloned().unwrap_or_default();
    let m = rec.finish(ManifestHeader {
        command,
        argv: inv.argv.clone(),
        resolved_args,
        config,
        seed,
        threads,
    });
    manifest::write_file(&manifest::manifest_path(base), &to_json(&m))
}

fn load_graph(rec: &mut Recorder, a: &InstanceArgs) -> CliResult<Graph> {
    let edges = rec.read(&a.network)?;
    let nodes = a.nodes.as_deref().map(|p| rec.read(p)).transpose()?;
    let g = parse_edge_list_with_nodes(nodes.as_deref(), &edges, a.is_directed())?;
    log::info!(
        "{}: {} nodes, {} edges, {}",
        a.network.display(),
        g.num_nodes(),
        g.num_edges(),
        if g.is_directed() {
            "directed"
        } else {
            "undirected"
        }
    );
    Ok(g)
}

fn load_label_file(rec: &mut Recorder, g: &Graph, path: &Path) -> CliResult<LabelVector> {
    let text = rec.read(path)?;
    let load = load_labels(g, &text)?;
    if !load.unmatched.is_empty() {
        log::warn!(
            "{}: {} label(s) not in the network, e.g. {}",
            path.display(),
            load.unmatched.len(),
            load.unmatched[0]
        );
    }
    Ok(load.labels)
}

fn fresh_seed() -> u64 {
    rand::random()
}

fn solve(a: SolveArgs, inv: &Invocation) -> CliResult<Outcome> {
    let mut rec = Recorder::new();
    let g = load_graph(&mut rec, &a.instance)?;
    let labels = load_label_file(&mut rec, &g, &a.labels)?;
    let model = a.instance.model;
    let problem = ProblemInstance::new(g, model, labels)?;

    let seed = a.seed.unwrap_or_else(fresh_seed);
    let cfg = SolverConfig {
        pop_size: a.pop,
        aux_size: a.aux,
        max_evaluations: a.budget,
        seed,
        swap_prob: a.swap_prob,
        mutation_rate: a.mutation_rate,
        eps0: a.eps0,
        eps_control_fraction: a.eps_fraction,
        eps_cp: a.eps_cp,
        rank_cv_weight: a.rank_cv_weight,
        disable_subpop1: a.disable_subpop1 || a.nopops,
        disable_subpop2: a.disable_subpop2 || a.nopops,
        disable_rankings: a.disable_rankings,
        use_cdp_main: a.cdp_main,
        threads: a.threads,
        record_trace: !a.no_trace,
    };
    let run = match a.algo {
        Algorithm::LscvMcea => moncp_core::solve(&problem, &cfg)?,
        Algorithm::Nsga2Cdp => nsga2_cdp_solve(&problem, &cfg)?,
    };
    log::info!(
        "{}: {} front points after {} evaluations in {:.2?}",
        run.algorithm,
        run.front.len(),
        run.evaluations,
        run.wall_time
    );
    let doc = ResultDoc::new(model, problem.graph(), &run);
    rec.write(&a.out, &to_json(&doc))?;

    let config = json!({
        "algorithm": run.algorithm,
        "model": model,
        "directed": problem.graph().is_directed(),
        "solver": cfg,
    });
    finish(
        rec,
        &a.out,
        inv,
        with_seed(inv, a.seed, seed),
        config,
        Some(seed),
        Some(a.threads),
    )?;
    if run.is_empty_feasible() {
        log::warn!("no feasible solution found; result written with an infeasibility report");
        Ok(Outcome::EmptyFeasibleSet)
    } else {
        Ok(Outcome::Success)
    }
}

fn oracle(a: OracleArgs, inv: &Invocation) -> CliResult<Outcome> {
    let mut rec = Recorder::new();
    let g = load_graph(&mut rec, &a.instance)?;
    let labels = match &a.labels {
        Some(path) => load_label_file(&mut rec, &g, path)?,
        None => LabelVector::zeros(g.num_nodes()),
    };
    let model = a.instance.model;
    let problem = ProblemInstance::new(g, model, labels)?;
    let front = enumerate_pareto_threads(&problem, a.limit, a.threads)?;
    let doc = OracleDoc::new(model, problem.graph(), &front);
    rec.write(&a.out, &to_json(&doc))?;
    let config = json!({
        "model": model,
        "directed": problem.graph().is_directed(),
        "limit": a.limit,
    });
    finish(
        rec,
        &a.out,
        inv,
        inv.args.clone(),
        config,
        None,
        Some(a.threads),
    )?;
    Ok(Outcome::Success)
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// `GROUP=PATH`, unless the whole string names an existing file.
fn split_group(spec: &str) -> (Option<String>, PathBuf) {
    if !Path::new(spec).exists() {
        if let Some((group, path)) = spec.split_once('=') {
            if !group.is_empty() {
                return (Some(group.to_string()), PathBuf::from(path));
            }
        }
    }
    (None, PathBuf::from(spec))
}

fn parse_points(path: &Path, text: &str) -> CliResult<Vec<(f64, f64)>> {
    if text.trim_start().starts_with('{') {
        return Ok(parse_json::<FrontSource>(path, text)?.pf);
    }
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed = match fields.as_slice() {
            [a, b] => a.parse::<f64>().ok().zip(b.parse::<f64>().ok()),
            _ => None,
        };
        let point = parsed.ok_or_else(|| {
            CliError::Input(format!(
                "{}:{}: expected two numbers `f1<TAB>f2`",
                path.display(),
                lineno + 1
            ))
        })?;
        out.push(point);
    }
    Ok(out)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn metrics(a: MetricsArgs, inv: &Invocation) -> CliResult<Outcome> {
    let mut rec = Recorder::new();
    let mut runs: Vec<(String, String, Option<u64>, Front)> = Vec::new();
    for spec in &a.results {
        let (group, path) = split_group(spec);
        let text = rec.read(&path)?;
        let src: FrontSource = parse_json(&path, &text)?;
        let group = group
            .or(src.algorithm.clone())
            .unwrap_or_else(|| "run".to_string());
        let label = path.display().to_string();
        runs.push((label.clone(), group, src.seed, Front::new(src.pf, label)));
    }

    let (reference, source) = match (&a.reference, a.union_reference) {
        (Some(path), _) => {
            let text = rec.read(path)?;
            let pts = parse_points(path, &text)?;
            (
                Front::new(pts, path.display().to_string()),
                path.display().to_string(),
            )
        }
        (None, true) => {
            let fronts: Vec<Front> = runs.iter().map(|r| r.3.clone()).collect();
            (union_reference_front(&fronts)?, "union".to_string())
        }
        (None, false) => {
            return Err(CliError::Usage(
                "no reference front: pass --reference FILE or --union-reference".into(),
            ))
        }
    };
    if reference.is_empty() {
        return Err(CliError::Input("reference front has no points".into()));
    }
    let mut all: Vec<&Front> = vec![&reference];
    all.extend(runs.iter().map(|r| &r.3));
    let bounds = Bounds::from_fronts(&all).expect("reference is non-empty");

    let mut rows = Vec::with_capacity(runs.len());
    for (file, group, seed, front) in &runs {
        let d = igd(front, &reference, &bounds)?;
        rows.push(RunMetrics {
            file: file.clone(),
            group: group.clone(),
            seed: *seed,
            points: front.len(),
            hv: hypervolume(front, &bounds)?,
            igd: d.is_finite().then_some(d),
        });
    }

    let mut groups: BTreeMap<&str, Vec<&RunMetrics>> = BTreeMap::new();
    for r in &rows {
        groups.entry(r.group.as_str()).or_default().push(r);
    }
    let names: Vec<&str> = groups.keys().copied().collect();
    let mut comparisons = Vec::new();
    for (i, ga) in names.iter().enumerate() {
        for gb in &names[i + 1..] {
            for indicator in ["hv", "igd"] {
                let values = |g: &str| -> Vec<f64> {
                    groups[g]
                        .iter()
                        .map(|r| match indicator {
                            "hv" => r.hv,
                            _ => r.igd.unwrap_or(f64::INFINITY),
                        })
                        .collect()
                };
                let (va, vb) = (values(ga), values(gb));
                comparisons.push(GroupComparison {
                    indicator: indicator.to_string(),
                    group_a: ga.to_string(),
                    group_b: gb.to_string(),
                    mean_a: mean(&va),
                    mean_b: mean(&vb),
                    p_value: rank_sum_compare(&va, &vb)?,
                });
            }
        }
    }

    let mut runs_tsv = String::from("file\tgroup\tseed\tpoints\thv\tigd\n");
    for r in &rows {
        let seed = r.seed.map(|s| s.to_string()).unwrap_or_default();
        let igd = r.igd.map(|v| v.to_string()).unwrap_or_else(|| "inf".into());
        let _ = writeln!(
            runs_tsv,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.file, r.group, seed, r.points, r.hv, igd
        );
    }
    let mut tests_tsv = String::from("indicator\tgroup_a\tgroup_b\tmean_a\tmean_b\tp_value\n");
    for c in &comparisons {
        let _ = writeln!(
            tests_tsv,
            "{}\t{}\t{}\t{}\t{}\t{}",
            c.indicator, c.group_a, c.group_b, c.mean_a, c.mean_b, c.p_value
        );
    }
    let doc = MetricsDoc {
        reference_source: source,
        reference: reference.points.clone(),
        bounds,
        runs: rows,
        comparisons,
    };
    rec.write(&with_suffix(&a.out, ".runs.tsv"), runs_tsv.as_bytes())?;
    rec.write(&with_suffix(&a.out, ".tests.tsv"), tests_tsv.as_bytes())?;
    rec.write(&with_suffix(&a.out, ".json"), &to_json(&doc))?;
    let config = json!({
        "results": a.results,
        "reference": a.reference,
        "union_reference": a.union_reference,
    });
    finish(rec, &a.out, inv, inv.args.clone(), config, None, None)?;
    Ok(Outcome::Success)
}

/// Reads just the solution lists of a result document.
#[derive(Deserialize)]
struct SolutionSource {
    ps: Vec<Vec<String>>,
    #[serde(default)]
    alternates: Vec<Vec<Vec<String>>>,
}

fn read_solutions(rec: &mut Recorder, a: &DrugArgs) -> CliResult<Vec<Vec<String>>> {
    if let Some(path) = &a.result {
        let text = rec.read(path)?;
        let src: SolutionSource = parse_json(path, &text)?;
        let mut out = src.ps;
        out.extend(src.alternates.into_iter().flatten());
        return Ok(out);
    }
    let path = a.ps.as_ref().expect("clap requires --result or --ps");
    let text = rec.read(path)?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect()
        })
        .collect())
}

fn evaluate_drugs(a: DrugArgs, inv: &Invocation) -> CliResult<Outcome> {
    if !(0.0..=1.0).contains(&a.threshold) {
        return Err(CliError::Usage(format!(
            "threshold {} outside [0, 1]",
            a.threshold
        )));
    }
    let mut rec = Recorder::new();
    let solutions = read_solutions(&mut rec, &a)?;
    let universe: Vec<String> = solutions
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&str, usize> = universe
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let vectors = solutions
        .iter()
        .map(|s| {
            let idx: Vec<usize> = s.iter().map(|n| index[n.as_str()]).collect();
            DecisionVector::from_selected(universe.len(), &idx)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let freq = gene_frequency(&vectors)?;
    let drivers: Vec<String> = select_drivers(&freq, a.threshold)
        .into_iter()
        .map(|i| universe[i].clone())
        .collect();

    let combos_text = rec.read(&a.combos)?;
    let combos = parse_drug_combinations(&combos_text)?;
    if combos.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no drug combinations",
            a.combos.display()
        )));
    }
    let driver_set: HashSet<String> = drivers.iter().cloned().collect();
    let ranking = rank_drug_combinations(&driver_set, &combos);
    let scores: Vec<f64> = ranking.iter().map(|r| r.probability).collect();
    let labels: Vec<bool> = ranking.iter().map(|r| r.efficacious).collect();
    let (auc_value, auc_note) = match auc(&scores, &labels) {
        Ok(v) => (Some(v), None),
        Err(Error::UndefinedAuc) => {
            log::warn!("all combinations share one efficacy label; AUC undefined");
            (
                None,
                Some("undefined: single-class efficacy labels".to_string()),
            )
        }
        Err(e) => return Err(e.into()),
    };

    let mut tsv = String::from("rank\tid\tscore\tprobability\tefficacious\n");
    for r in &ranking {
        let _ = writeln!(
            tsv,
            "{}\t{}\t{}\t{}\t{}",
            r.rank,
            r.id,
            r.score,
            r.probability,
            u8::from(r.efficacious)
        );
    }
    let doc = DrugDoc {
        threshold: a.threshold,
        solutions: solutions.len(),
        frequencies: universe.iter().cloned().zip(freq).collect(),
        drivers,
        ranking,
        auc: auc_value,
        auc_note,
    };
    rec.write(&with_suffix(&a.out, ".tsv"), tsv.as_bytes())?;
    rec.write(&with_suffix(&a.out, ".json"), &to_json(&doc))?;
    let config = json!({ "threshold": a.threshold });
    finish(rec, &a.out, inv, inv.args.clone(), config, None, None)?;
    Ok(Outcome::Success)
}

fn gen_synthetic(a: SynthArgs, inv: &Invocation) -> CliResult<Outcome> {
    let kind = match (a.kind, a.p, a.m) {
        (GraphType::Er, Some(p), _) => GraphKind::Er { p },
        (GraphType::Ba, _, Some(m)) => GraphKind::Ba { m },
        (GraphType::Er, None, _) => return Err(CliError::Usage("--type er needs --p".into())),
        (GraphType::Ba, _, None) => return Err(CliError::Usage("--type ba needs --m".into())),
    };
    let seed = a.seed.unwrap_or_else(fresh_seed);
    let spec = SyntheticSpec {
        nodes: a.nodes,
        kind,
        directed: a.directed,
        label_frac: a.label_frac,
        seed,
    };
    let inst = generate(&spec)?;
    let mut labels = String::new();
    for i in inst.labels.targets() {
        labels.push_str(inst.graph.name(i));
        labels.push('\n');
    }
    let mut rec = Recorder::new();
    rec.write(
        &with_suffix(&a.out, ".edges"),
        inst.graph.to_edge_list().as_bytes(),
    )?;
    rec.write(
        &with_suffix(&a.out, ".nodes"),
        inst.graph.to_node_list().as_bytes(),
    )?;
    rec.write(&with_suffix(&a.out, ".labels"), labels.as_bytes())?;
    log::info!(
        "generated {} nodes, {} edges, {} targets",
        inst.graph.num_nodes(),
        inst.graph.num_edges(),
        inst.labels.target_count()
    );
    let config = serde_json::to_value(&spec).expect("spec serializes");
    finish(
        rec,
        &a.out,
        inv,
        with_seed(inv, a.seed, seed),
        config,
        Some(seed),
        None,
    )?;
    Ok(Outcome::Success)
}

fn rerun(a: RerunArgs, inv: &Invocation) -> CliResult<Outcome> {
    use clap::Parser;

    let recorded = manifest::load(&a.manifest)?;
    let mut args = recorded.resolved_args.clone();
    if let Some(out) = &a.out {
        args.push("--out".into());
        args.push(out.display().to_string());
    }
    let parsed =
        Cli::try_parse_from(std::iter::once("moncp".to_string()).chain(args.iter().cloned()))
            .map_err(|e| {
                CliError::Input(format!("{}: recorded arguments: {e}", a.manifest.display()))
            })?;
    if matches!(parsed.command, Command::Rerun(_)) {
        return Err(CliError::Input(
            "a manifest cannot replay another rerun".into(),
        ));
    }
    log::info!("replaying `{}`", args.join(" "));
    let replay = Invocation {
        argv: inv.argv.clone(),
        args,
    };
    dispatch(parsed.command, &replay)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_prefix_split() {
        assert_eq!(
            split_group("full=/no/such/file.json"),
            (Some("full".into()), PathBuf::from("/no/such/file.json"))
        );
        assert_eq!(
            split_group("/no/such/file.json"),
            (None, PathBuf::from("/no/such/file.json"))
        );
    }

    #[test]
    fn point_files() {
        let p = Path::new("ref.tsv");
        assert_eq!(
            parse_points(p, "# f1 f2\n1\t0\n2\t1\n").unwrap(),
            vec![(1.0, 0.0), (2.0, 1.0)]
        );
        assert_eq!(
            parse_points(p, "{\"pf\": [[3, 2]]}").unwrap(),
            vec![(3.0, 2.0)]
        );
        assert!(parse_points(p, "1 2 3\n").is_err());
    }
}
