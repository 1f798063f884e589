//! LSCV-MCEA: a main population on the two-objective constrained problem and
//! two auxiliary populations on its single-objective constrained projections.
//! All offspring of a generation are pooled and offered to every population's
//! environmental selection.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{
    cv_then_objective_key, dominates, epsilon_rank, epsilon_select, initialize_population,
    make_offspring, median_cv, rankings_fitness, tournament_select, truncate_by_fitness,
    EpsilonSchedule, Evaluator, Individual, Population,
};
use crate::error::{Error, Result};
use crate::problem::{AuxTask, DecisionVector, ProblemInstance};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Main population size.
    pub pop_size: usize,
    /// Size of each auxiliary population.
    pub aux_size: usize,
    pub max_evaluations: usize,
    pub seed: u64,
    /// Per-bit swap probability of uniform crossover.
    pub swap_prob: f64,
    /// Bit-flip rate; `None` means `1/n`.
    pub mutation_rate: Option<f64>,
    /// Initial epsilon level; `None` means the median violation of the
    /// initial main population.
    pub eps0: Option<f64>,
    /// Fraction of the generation horizon after which epsilon is zero.
    pub eps_control_fraction: f64,
    pub eps_cp: f64,
    /// Weight of the violation rank in the rankings fitness.
    pub rank_cv_weight: f64,
    pub disable_subpop1: bool,
    pub disable_subpop2: bool,
    /// Order auxiliary populations by (cv, objective) instead of rank sums.
    pub disable_rankings: bool,
    /// Constrained dominance in the main population instead of epsilon levels.
    pub use_cdp_main: bool,
    pub threads: usize,
    pub record_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            pop_size: 300,
            aux_size: 90,
            max_evaluations: 100_000,
            seed: 0,
            swap_prob: 0.5,
            mutation_rate: None,
            eps0: None,
            eps_control_fraction: 0.8,
            eps_cp: 2.0,
            rank_cv_weight: 1.0,
            disable_subpop1: false,
            disable_subpop2: false,
            disable_rankings: false,
            use_cdp_main: false,
            threads: 1,
            record_trace: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        self.validate_common()?;
        if self.aux_size < 2 || !self.aux_size.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "auxiliary population size must be even and >= 2, got {}",
                self.aux_size
            )));
        }
        let minimum = self.pop_size + 2 * self.aux_size;
        if self.max_evaluations < minimum {
            return Err(Error::Config(format!(
                "budget {} is below the initialization cost {minimum}",
                self.max_evaluations
            )));
        }
        Ok(())
    }

    pub(crate) fn validate_common(&self) -> Result<()> {
        if self.pop_size < 2 || !self.pop_size.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "population size must be even and >= 2, got {}",
                self.pop_size
            )));
        }
        if self.max_evaluations < self.pop_size {
            return Err(Error::Config(format!(
                "budget {} is below the population size {}",
                self.max_evaluations, self.pop_size
            )));
        }
        if !(0.0..=1.0).contains(&self.swap_prob) {
            return Err(Error::Config("swap probability outside [0, 1]".into()));
        }
        if let Some(r) = self.mutation_rate {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::Config("mutation rate outside [0, 1]".into()));
            }
        }
        if !(self.eps_control_fraction > 0.0 && self.eps_control_fraction <= 1.0) {
            return Err(Error::Config(
                "epsilon control fraction outside (0, 1]".into(),
            ));
        }
        if self.threads == 0 {
            return Err(Error::Config("threads must be >= 1".into()));
        }
        Ok(())
    }

    /// Short tag naming the variant, e.g. `lscv-mcea` or `lscv-mcea/nopops`.
    pub fn variant_label(&self) -> String {
        let mut tags = Vec::new();
        match (self.disable_subpop1, self.disable_subpop2) {
            (true, true) => tags.push("nopops"),
            (true, false) => tags.push("nop1"),
            (false, true) => tags.push("nop2"),
            _ => {}
        }
        if self.disable_rankings {
            tags.push("norank");
        }
        if self.use_cdp_main {
            tags.push("cdp");
        }
        if tags.is_empty() {
            "lscv-mcea".to_string()
        } else {
            format!("lscv-mcea/{}", tags.join("+"))
        }
    }
}

/// Non-dominated decision vectors and their objective values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParetoSet {
    /// One representative per front point.
    pub ps: Vec<DecisionVector>,
    /// `(f1, f2_raw)` for each entry of `ps`, ascending in `f1`.
    pub pf: Vec<(usize, usize)>,
    /// Other distinct vectors mapping to the same front point.
    pub alternates: Vec<Vec<DecisionVector>>,
}

impl ParetoSet {
    pub fn is_empty(&self) -> bool {
        self.ps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ps.len()
    }

    /// All distinct vectors on the front, representatives first.
    pub fn all_vectors(&self) -> Vec<&DecisionVector> {
        self.ps
            .iter()
            .chain(self.alternates.iter().flatten())
            .collect()
    }
}

/// Reported instead of a front when no feasible solution was found.
#[derive(Debug, Clone, PartialEq)]
pub struct InfeasibleReport {
    pub min_cv: f64,
    pub front: ParetoSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationTrace {
    pub generation: usize,
    pub epsilon: f64,
    pub evaluations: usize,
    pub feasible_ratio: f64,
    pub front_size: usize,
    pub best_feasible_f1: Option<usize>,
    /// Digest of the mixed offspring as handed to each selection
    /// (main, auxiliary 1, auxiliary 2).
    pub offspring_digests: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub algorithm: String,
    pub config: SolverConfig,
    pub seed: u64,
    pub population: Vec<Individual>,
    pub front: ParetoSet,
    pub infeasible: Option<InfeasibleReport>,
    pub evaluations: usize,
    pub generations: usize,
    pub wall_time: Duration,
    pub trace: Vec<GenerationTrace>,
}

impl RunResult {
    /// True when the final population holds no feasible solution.
    pub fn is_empty_feasible(&self) -> bool {
        self.front.is_empty()
    }
}

/// Feasible members, non-dominated filter on `(f1, -f2)`, one representative
/// per objective vector (first in population order) plus distinct alternates.
pub fn nondominated_feasible_front(members: &[Individual]) -> ParetoSet {
    let feasible: Vec<&Individual> = members.iter().filter(|m| m.eval.feasible).collect();
    nondominated_set(&feasible)
}

fn nondominated_set(members: &[&Individual]) -> ParetoSet {
    let mut groups: BTreeMap<(usize, usize), Vec<&DecisionVector>> = BTreeMap::new();
    for m in members {
        let vs = groups.entry((m.eval.f1, m.eval.f2_raw)).or_default();
        if !vs.contains(&&m.x) {
            vs.push(&m.x);
        }
    }
    let keys: Vec<(usize, usize)> = groups.keys().copied().collect();
    let as_min = |k: &(usize, usize)| [k.0 as f64, -(k.1 as f64)];
    let mut out = ParetoSet::default();
    for k in &keys {
        if keys.iter().any(|o| dominates(&as_min(o), &as_min(k))) {
            continue;
        }
        let mut vs = groups[k].iter().map(|&v| v.clone());
        out.ps.push(vs.next().expect("group non-empty"));
        out.pf.push(*k);
        out.alternates.push(vs.collect());
    }
    out
}

fn infeasible_report(members: &[Individual]) -> Option<InfeasibleReport> {
    let min_cv = members.iter().map(|m| m.eval.cv).min_by(f64::total_cmp)?;
    let best: Vec<&Individual> = members.iter().filter(|m| m.eval.cv == min_cv).collect();
    Some(InfeasibleReport {
        min_cv,
        front: nondominated_set(&best),
    })
}

pub(crate) fn offspring_digest(mixed: &[Individual]) -> u64 {
    let mut h = DefaultHasher::new();
    for m in mixed {
        m.x.hash(&mut h);
    }
    h.finish()
}

pub(crate) fn finish_run(
    algorithm: String,
    config: &SolverConfig,
    population: Population,
    evaluations: usize,
    generations: usize,
    started: Instant,
    trace: Vec<GenerationTrace>,
) -> RunResult {
    let front = nondominated_feasible_front(&population.members);
    let infeasible = if front.is_empty() {
        log::warn!("{algorithm}: no feasible solution found within the budget");
        infeasible_report(&population.members)
    } else {
        None
    };
    RunResult {
        algorithm,
        config: config.clone(),
        seed: config.seed,
        population: population.members,
        front,
        infeasible,
        evaluations,
        generations,
        wall_time: started.elapsed(),
        trace,
    }
}

pub(crate) fn trace_entry(
    generation: usize,
    epsilon: f64,
    evaluations: usize,
    pop: &Population,
    offspring_digests: Vec<u64>,
) -> GenerationTrace {
    let front = nondominated_feasible_front(&pop.members);
    GenerationTrace {
        generation,
        epsilon,
        evaluations,
        feasible_ratio: pop.feasible_count() as f64 / pop.len().max(1) as f64,
        front_size: front.len(),
        best_feasible_f1: front.pf.first().map(|p| p.0),
        offspring_digests,
    }
}

struct Auxiliary {
    task: AuxTask,
    pop: Population,
}

impl Auxiliary {
    fn fitness(&self, members: &[Individual], cfg: &SolverConfig) -> Vec<f64> {
        if cfg.disable_rankings {
            cv_then_objective_key(members, self.task)
        } else {
            rankings_fitness(members, self.task, cfg.rank_cv_weight)
        }
    }
}

/// Runs LSCV-MCEA until the evaluation budget is spent and returns the
/// feasible non-dominated solutions of the main population.
pub fn solve(problem: &ProblemInstance, cfg: &SolverConfig) -> Result<RunResult> {
    cfg.validate()?;
    let started = Instant::now();
    let evaluator = Evaluator::new(problem, cfg.threads)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = problem.dimension();
    let mutation_rate = cfg.mutation_rate.unwrap_or(1.0 / n as f64);
    let half = cfg.pop_size / 2;
    let aux_half = cfg.aux_size / 2;

    let mut pop = initialize_population(&evaluator, cfg.pop_size, &mut rng)?;
    let mut aux: Vec<Auxiliary> = Vec::new();
    for (task, disabled) in [
        (AuxTask::MinDrivers, cfg.disable_subpop1),
        (AuxTask::MaxTargets, cfg.disable_subpop2),
    ] {
        if !disabled {
            aux.push(Auxiliary {
                task,
                pop: initialize_population(&evaluator, cfg.aux_size, &mut rng)?,
            });
        }
    }

    let per_generation = half + aux.len() * aux_half;
    let horizon = (cfg.max_evaluations / per_generation).max(1);
    let eps0 = cfg.eps0.unwrap_or_else(|| median_cv(&pop.members));
    let schedule = EpsilonSchedule::new(eps0, horizon, cfg.eps_control_fraction, cfg.eps_cp);
    let level = |t: usize| {
        if cfg.use_cdp_main {
            0.0
        } else {
            schedule.level(t)
        }
    };

    let mut main_rank = epsilon_rank(&pop.members, level(0));
    let mut trace = Vec::new();
    let mut generation = 0;

    while evaluator.evaluations() < cfg.max_evaluations {
        generation += 1;
        let eps = level(generation);

        let picks = tournament_select(
            pop.len(),
            half,
            |a, b| main_rank.position[a] < main_rank.position[b],
            &mut rng,
        );
        let parents: Vec<&DecisionVector> = picks.iter().map(|&i| &pop.members[i].x).collect();
        let mut children = make_offspring(&parents, half, cfg.swap_prob, mutation_rate, &mut rng)?;

        for a in &aux {
            let fitness = a.fitness(&a.pop.members, cfg);
            let picks = tournament_select(
                a.pop.len(),
                aux_half,
                |x, y| fitness[x] < fitness[y],
                &mut rng,
            );
            let parents: Vec<&DecisionVector> =
                picks.iter().map(|&i| &a.pop.members[i].x).collect();
            children.extend(make_offspring(
                &parents,
                aux_half,
                cfg.swap_prob,
                mutation_rate,
                &mut rng,
            )?);
        }

        let mixed = evaluator.evaluate_all(children, generation)?;
        let mut digests = Vec::with_capacity(1 + aux.len());

        let mut pool = std::mem::take(&mut pop.members);
        let offered = pool.len();
        pool.extend(mixed.iter().cloned());
        digests.push(offspring_digest(&pool[offered..]));
        pop = epsilon_select(pool, cfg.pop_size, eps);
        main_rank = epsilon_rank(&pop.members, eps);

        for a in &mut aux {
            let mut pool = std::mem::take(&mut a.pop.members);
            let offered = pool.len();
            pool.extend(mixed.iter().cloned());
            digests.push(offspring_digest(&pool[offered..]));
            let fitness = a.fitness(&pool, cfg);
            a.pop = truncate_by_fitness(pool, &fitness, cfg.aux_size);
        }

        if cfg.record_trace {
            trace.push(trace_entry(
                generation,
                eps,
                evaluator.evaluations(),
                &pop,
                digests,
            ));
        }
    }

    Ok(finish_run(
        cfg.variant_label(),
        cfg,
        pop,
        evaluator.evaluations(),
        generation,
        started,
        trace,
    ))
}
