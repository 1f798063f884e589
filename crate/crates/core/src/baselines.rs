//! Comparison methods: NSGA-II with constrained dominance on the same
//! two-objective problem, and the single-objective driver-set heuristics of
//! each control framework plus the matching-based driver set.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::control::ControlModel;
use crate::engine::{
    epsilon_rank, epsilon_select, initialize_population, make_offspring, tournament_select,
    Evaluator,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::problem::{DecisionVector, ProblemInstance};
use crate::solver::{finish_run, offspring_digest, trace_entry, RunResult, SolverConfig};

/// NSGA-II with the constrained-dominance principle: feasible beats
/// infeasible, infeasible compared by violation, feasible by Pareto rank and
/// crowding. `N` offspring per generation, same budget accounting as
/// [`crate::solver::solve`].
pub fn nsga2_cdp_solve(problem: &ProblemInstance, cfg: &SolverConfig) -> Result<RunResult> {
    cfg.validate_common()?;
    let started = Instant::now();
    let evaluator = Evaluator::new(problem, cfg.threads)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mutation_rate = cfg
        .mutation_rate
        .unwrap_or(1.0 / problem.dimension() as f64);

    let mut pop = initialize_population(&evaluator, cfg.pop_size, &mut rng)?;
    let mut rank = epsilon_rank(&pop.members, 0.0);
    let mut trace = Vec::new();
    let mut generation = 0;

    while evaluator.evaluations() < cfg.max_evaluations {
        generation += 1;
        let picks = tournament_select(
            pop.len(),
            cfg.pop_size,
            |a, b| rank.position[a] < rank.position[b],
            &mut rng,
        );
        let parents: Vec<&DecisionVector> = picks.iter().map(|&i| &pop.members[i].x).collect();
        let children = make_offspring(
            &parents,
            cfg.pop_size,
            cfg.swap_prob,
            mutation_rate,
            &mut rng,
        )?;
        let offspring = evaluator.evaluate_all(children, generation)?;
        let digest = offspring_digest(&offspring);
        let mut pool = std::mem::take(&mut pop.members);
        pool.extend(offspring);
        pop = epsilon_select(pool, cfg.pop_size, 0.0);
        rank = epsilon_rank(&pop.members, 0.0);
        if cfg.record_trace {
            trace.push(trace_entry(
                generation,
                0.0,
                evaluator.evaluations(),
                &pop,
                vec![digest],
            ));
        }
    }

    Ok(finish_run(
        "nsga2-cdp".to_string(),
        cfg,
        pop,
        evaluator.evaluations(),
        generation,
        started,
        trace,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineMethod {
    GreedyMds,
    GreedyVertexCover,
    GreedyFvs,
    Mms,
}

impl BaselineMethod {
    /// The heuristic matching a control model.
    pub fn for_model(model: ControlModel) -> Self {
        match model {
            ControlModel::Mds => BaselineMethod::GreedyMds,
            ControlModel::Ncua => BaselineMethod::GreedyVertexCover,
            ControlModel::Dfvs => BaselineMethod::GreedyFvs,
        }
    }

    pub fn run(self, g: &Graph) -> Result<Vec<usize>> {
        match self {
            BaselineMethod::GreedyMds => greedy_mds(g),
            BaselineMethod::GreedyVertexCover => greedy_vertex_cover(g),
            BaselineMethod::GreedyFvs => greedy_fvs(g),
            BaselineMethod::Mms => Ok(mms_driver_set(g)),
        }
    }
}

impl fmt::Display for BaselineMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaselineMethod::GreedyMds => "greedy-mds",
            BaselineMethod::GreedyVertexCover => "greedy-vertex-cover",
            BaselineMethod::GreedyFvs => "greedy-fvs",
            BaselineMethod::Mms => "mms",
        })
    }
}

impl FromStr for BaselineMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy-mds" => Ok(BaselineMethod::GreedyMds),
            "greedy-vertex-cover" => Ok(BaselineMethod::GreedyVertexCover),
            "greedy-fvs" => Ok(BaselineMethod::GreedyFvs),
            "mms" => Ok(BaselineMethod::Mms),
            other => Err(Error::Usage(format!("unknown baseline '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaselineResult {
    pub method: String,
    pub drivers: Vec<usize>,
    pub f1: usize,
    pub f2_raw: usize,
    pub feasible: bool,
}

/// Runs a heuristic and scores its driver set on `problem`. Feasibility is
/// checked against the problem's model, except for the matching-based set,
/// which is controllable under linear dynamics by construction.
pub fn run_baseline(problem: &ProblemInstance, method: BaselineMethod) -> Result<BaselineResult> {
    let drivers = method.run(problem.graph())?;
    let x = DecisionVector::from_selected(problem.dimension(), &drivers)?;
    let (f1, f2_raw) = problem.objective_counts(&x);
    let feasible = match method {
        BaselineMethod::Mms => true,
        _ => problem
            .model()
            .violation(problem.graph(), &x)?
            .is_feasible(),
    };
    Ok(BaselineResult {
        method: method.to_string(),
        drivers,
        f1,
        f2_raw,
        feasible,
    })
}

fn require(g: &Graph, directed: bool, what: &str) -> Result<()> {
    if g.is_directed() != directed {
        let want = if directed {
            "a directed"
        } else {
            "an undirected"
        };
        return Err(Error::Usage(format!("{what} requires {want} graph")));
    }
    Ok(())
}

fn argmax_lowest<I: Iterator<Item = (usize, usize)>>(it: I) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (v, score) in it {
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((v, score));
        }
    }
    best.map(|(v, _)| v)
}

/// Repeatedly adds the node that dominates the most still-undominated nodes.
pub fn greedy_mds(g: &Graph) -> Result<Vec<usize>> {
    require(g, false, "greedy MDS")?;
    let n = g.num_nodes();
    let mut covered = vec![false; n];
    // gain[v] = undominated nodes in the closed neighborhood of v
    let mut gain: Vec<usize> = (0..n).map(|v| g.out_degree(v) + 1).collect();
    let mut remaining = n;
    let mut chosen = Vec::new();
    while remaining > 0 {
        let v = argmax_lowest((0..n).map(|v| (v, gain[v]))).expect("non-empty graph");
        chosen.push(v);
        let closed = std::iter::once(v).chain(g.out_neighbors(v).iter().copied());
        for u in closed.collect::<Vec<_>>() {
            if covered[u] {
                continue;
            }
            covered[u] = true;
            remaining -= 1;
            gain[u] -= 1;
            for &w in g.out_neighbors(u) {
                gain[w] -= 1;
            }
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Repeatedly takes the endpoint with the most uncovered incident edges.
pub fn greedy_vertex_cover(g: &Graph) -> Result<Vec<usize>> {
    require(g, false, "greedy vertex cover")?;
    let n = g.num_nodes();
    let mut residual: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
    let mut in_cover = vec![false; n];
    let mut uncovered = g.num_edges();
    let mut chosen = Vec::new();
    while uncovered > 0 {
        let v = argmax_lowest(
            (0..n)
                .filter(|&v| residual[v] > 0)
                .map(|v| (v, residual[v])),
        )
        .expect("an uncovered edge has endpoints with residual degree");
        in_cover[v] = true;
        chosen.push(v);
        for &w in g.out_neighbors(v) {
            if !in_cover[w] {
                residual[w] -= 1;
                uncovered -= 1;
            }
        }
        residual[v] = 0;
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// All source nodes, then repeatedly the node with the largest
/// residual in-degree times out-degree among nodes still on a cycle.
pub fn greedy_fvs(g: &Graph) -> Result<Vec<usize>> {
    require(g, true, "greedy FVS")?;
    let n = g.num_nodes();
    let mut removed = vec![false; n];
    for s in g.source_nodes()? {
        removed[s] = true;
    }
    loop {
        let comps = g.strongly_connected_components(&removed)?;
        let cyclic: Vec<usize> = comps
            .into_iter()
            .filter(|c| c.len() >= 2)
            .flatten()
            .collect();
        if cyclic.is_empty() {
            break;
        }
        let score = |v: usize| {
            let din = g.in_neighbors(v).iter().filter(|&&u| !removed[u]).count();
            let dout = g.out_neighbors(v).iter().filter(|&&u| !removed[u]).count();
            din * dout
        };
        let mut cyclic = cyclic;
        cyclic.sort_unstable();
        let v = argmax_lowest(cyclic.into_iter().map(|v| (v, score(v)))).expect("non-empty");
        removed[v] = true;
    }
    Ok((0..n).filter(|&v| removed[v]).collect())
}

/// Unmatched in-copies of a maximum matching; at least one driver even when
/// the matching is perfect.
pub fn mms_driver_set(g: &Graph) -> Vec<usize> {
    let m = g.maximum_bipartite_matching();
    if m.unmatched.is_empty() {
        vec![0]
    } else {
        m.unmatched
    }
}
