//! Serialized documents written by the commands.

use moncp_core::engine::Individual;
use moncp_core::graph::Graph;
use moncp_core::metrics::{Bounds, RankedCombination};
use moncp_core::oracle::OracleFront;
use moncp_core::problem::DecisionVector;
use moncp_core::solver::{GenerationTrace, ParetoSet, RunResult};
use moncp_core::{ControlModel, SolverConfig};
use serde::{Deserialize, Serialize};

pub const RESULT_FORMAT: &str = "moncp-result/1";
pub const ORACLE_FORMAT: &str = "moncp-oracle/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Member {
    pub x: String,
    pub f1: usize,
    pub f2: usize,
    pub cv: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfeasibleDoc {
    pub min_cv: f64,
    pub pf: Vec<(usize, usize)>,
    pub ps: Vec<Vec<String>>,
}

/// Solver output. Wall time is kept out so equal seeds give equal bytes;
/// it lives in the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub format: String,
    pub algorithm: String,
    pub model: ControlModel,
    pub directed: bool,
    pub num_nodes: usize,
    pub num_edges: usize,
    pub seed: u64,
    pub config: SolverConfig,
    pub evaluations: usize,
    pub generations: usize,
    pub feasible_found: bool,
    pub pf: Vec<(usize, usize)>,
    pub ps: Vec<Vec<String>>,
    pub alternates: Vec<Vec<Vec<String>>>,
    pub infeasible: Option<InfeasibleDoc>,
    pub population: Vec<Member>,
    pub trace: Vec<GenerationTrace>,
}

pub fn names(g: &Graph, x: &DecisionVector) -> Vec<String> {
    x.selected()
        .into_iter()
        .map(|i| g.name(i).to_string())
        .collect()
}

fn set_names(g: &Graph, set: &ParetoSet) -> (Vec<Vec<String>>, Vec<Vec<Vec<String>>>) {
    let ps = set.ps.iter().map(|x| names(g, x)).collect();
    let alternates = set
        .alternates
        .iter()
        .map(|alts| alts.iter().map(|x| names(g, x)).collect())
        .collect();
    (ps, alternates)
}

fn member(m: &Individual) -> Member {
    Member {
        x: m.x.to_bitstring(),
        f1: m.eval.f1,
        f2: m.eval.f2_raw,
        cv: m.eval.cv,
    }
}

impl ResultDoc {
    pub fn new(model: ControlModel, g: &Graph, run: &RunResult) -> Self {
        let (ps, alternates) = set_names(g, &run.front);
        ResultDoc {
            format: RESULT_FORMAT.into(),
            algorithm: run.algorithm.clone(),
            model,
            directed: g.is_directed(),
            num_nodes: g.num_nodes(),
            num_edges: g.num_edges(),
            seed: run.seed,
            config: run.config.clone(),
            evaluations: run.evaluations,
            generations: run.generations,
            feasible_found: !run.front.is_empty(),
            pf: run.front.pf.clone(),
            ps,
            alternates,
            infeasible: run.infeasible.as_ref().map(|inf| InfeasibleDoc {
                min_cv: inf.min_cv,
                pf: inf.front.pf.clone(),
                ps: set_names(g, &inf.front).0,
            }),
            population: run.population.iter().map(member).collect(),
            trace: run.trace.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub format: String,
    pub model: ControlModel,
    pub directed: bool,
    pub num_nodes: usize,
    pub instance_hash: String,
    pub pf: Vec<(usize, usize)>,
    /// Every attaining solution per front point.
    pub ps: Vec<Vec<Vec<String>>>,
}

impl OracleDoc {
    pub fn new(model: ControlModel, g: &Graph, front: &OracleFront) -> Self {
        OracleDoc {
            format: ORACLE_FORMAT.into(),
            model,
            directed: g.is_directed(),
            num_nodes: g.num_nodes(),
            instance_hash: front.instance_hash.clone(),
            pf: front.pf.clone(),
            ps: front
                .ps
                .iter()
                .map(|set| set.iter().map(|x| names(g, x)).collect())
                .collect(),
        }
    }
}

/// Only the fields metrics needs; accepts result and oracle documents.
#[derive(Debug, Clone, Deserialize)]
pub struct FrontSource {
    #[serde(default)]
    pub algorithm: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    pub pf: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub file: String,
    pub group: String,
    pub seed: Option<u64>,
    pub points: usize,
    pub hv: f64,
    /// `None` when the run found no feasible point (infinite IGD).
    pub igd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupComparison {
    pub indicator: String,
    pub group_a: String,
    pub group_b: String,
    pub mean_a: f64,
    pub mean_b: f64,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsDoc {
    pub reference_source: String,
    pub reference: Vec<(f64, f64)>,
    pub bounds: Bounds,
    pub runs: Vec<RunMetrics>,
    pub comparisons: Vec<GroupComparison>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrugDoc {
    pub threshold: f64,
    pub solutions: usize,
    /// Selection frequency of every gene seen in the solution set.
    pub frequencies: Vec<(String, f64)>,
    pub drivers: Vec<String>,
    pub ranking: Vec<RankedCombination>,
    /// `None` when all combinations share one efficacy label.
    pub auc: Option<f64>,
    pub auc_note: Option<String>,
}
