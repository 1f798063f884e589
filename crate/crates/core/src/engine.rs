//! Binary-encoded constrained multi-objective machinery shared by the
//! solvers: evaluation with budget accounting, variation operators,
//! non-dominated sorting, crowding, epsilon-level environmental selection and
//! the rankings-based fitness of the auxiliary populations.

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::problem::{AuxTask, DecisionVector, Evaluation, ProblemInstance};

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: DecisionVector,
    pub eval: Evaluation,
    /// Generation in which the individual was created.
    pub birth: usize,
}

impl Individual {
    pub fn objectives(&self) -> [f64; 2] {
        self.eval.objectives()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Population {
    pub members: Vec<Individual>,
    pub capacity: usize,
}

impl Population {
    pub fn new(members: Vec<Individual>, capacity: usize) -> Self {
        Self { members, capacity }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn objectives(&self) -> Vec<[f64; 2]> {
        self.members.iter().map(Individual::objectives).collect()
    }

    pub fn feasible_count(&self) -> usize {
        self.members.iter().filter(|m| m.eval.feasible).count()
    }
}

/// Evaluates decision vectors against a problem and counts every call.
/// With more than one thread, batches are split into contiguous chunks;
/// evaluation is pure, so results do not depend on the thread count.
pub struct Evaluator<'a> {
    problem: &'a ProblemInstance,
    count: AtomicUsize,
    pool: Option<rayon::ThreadPool>,
}

impl<'a> Evaluator<'a> {
    pub fn new(problem: &'a ProblemInstance, threads: usize) -> Result<Self> {
        let pool = if threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Error::Config(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        Ok(Self {
            problem,
            count: AtomicUsize::new(0),
            pool,
        })
    }

    pub fn problem(&self) -> &ProblemInstance {
        self.problem
    }

    pub fn evaluations(&self) -> usize {
        self.count.load(AtomicOrdering::Relaxed)
    }

    pub fn evaluate(&self, x: DecisionVector, birth: usize) -> Result<Individual> {
        let eval = self.problem.evaluate(&x)?;
        self.count.fetch_add(1, AtomicOrdering::Relaxed);
        Ok(Individual { x, eval, birth })
    }

    pub fn evaluate_all(&self, xs: Vec<DecisionVector>, birth: usize) -> Result<Vec<Individual>> {
        match &self.pool {
            None => xs.into_iter().map(|x| self.evaluate(x, birth)).collect(),
            Some(pool) => {
                let chunk = xs.len().div_ceil(pool.current_num_threads()).max(1);
                pool.install(|| {
                    xs.into_par_iter()
                        .with_min_len(chunk)
                        .map(|x| self.evaluate(x, birth))
                        .collect()
                })
            }
        }
    }
}

/// Random population: every bit set independently with probability 0.5.
pub fn initialize_population<R: Rng + ?Sized>(
    evaluator: &Evaluator<'_>,
    size: usize,
    rng: &mut R,
) -> Result<Population> {
    if size < 2 {
        return Err(Error::Config(format!("population size {size} < 2")));
    }
    let n = evaluator.problem().dimension();
    let xs = (0..size)
        .map(|_| DecisionVector::from_bits((0..n).map(|_| rng.gen_bool(0.5)).collect()))
        .collect();
    Ok(Population::new(evaluator.evaluate_all(xs, 0)?, size))
}

/// Swaps the parents' bits wherever `mask` is set.
pub fn crossover_with_mask(
    a: &DecisionVector,
    b: &DecisionVector,
    mask: &[bool],
) -> Result<(DecisionVector, DecisionVector)> {
    if a.len() != b.len() || a.len() != mask.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: if a.len() != b.len() {
                b.len()
            } else {
                mask.len()
            },
        });
    }
    let mut c1 = a.clone();
    let mut c2 = b.clone();
    for (i, &swap) in mask.iter().enumerate() {
        if swap {
            c1.set(i, b.get(i));
            c2.set(i, a.get(i));
        }
    }
    Ok((c1, c2))
}

/// Uniform crossover: each position swapped independently with `swap_prob`.
pub fn uniform_crossover<R: Rng + ?Sized>(
    a: &DecisionVector,
    b: &DecisionVector,
    swap_prob: f64,
    rng: &mut R,
) -> Result<(DecisionVector, DecisionVector)> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    let mask: Vec<bool> = (0..a.len()).map(|_| rng.gen_bool(swap_prob)).collect();
    crossover_with_mask(a, b, &mask)
}

/// Flips each bit independently with probability `rate`.
pub fn bitflip_mutation<R: Rng + ?Sized>(x: &mut DecisionVector, rate: f64, rng: &mut R) {
    if rate <= 0.0 {
        return;
    }
    let rate = rate.min(1.0);
    for bit in x.as_mut_slice() {
        if rng.gen_bool(rate) {
            *bit = !*bit;
        }
    }
}

/// Pareto dominance on minimized coordinates.
pub fn dominates(a: &[f64; 2], b: &[f64; 2]) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1])
}

/// Partitions `points` into non-dominated fronts (indices, best first).
///
/// Two-objective sweep: points are visited in lexicographic order and each
/// goes to the first front whose most recent member does not dominate it,
/// found by binary search. O(N log N).
pub fn nondominated_sort(points: &[[f64; 2]]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        points[i][0]
            .total_cmp(&points[j][0])
            .then(points[i][1].total_cmp(&points[j][1]))
    });
    let mut fronts: Vec<Vec<usize>> = Vec::new();
    for &p in &order {
        let dominated_by = |front: &Vec<usize>| {
            let last = *front.last().expect("fronts are non-empty");
            dominates(&points[last], &points[p])
        };
        // fronts dominating p form a prefix
        let k = fronts.partition_point(dominated_by);
        if k == fronts.len() {
            fronts.push(vec![p]);
        } else {
            fronts[k].push(p);
        }
    }
    for f in &mut fronts {
        f.sort_unstable();
    }
    fronts
}

/// Crowding distance of each point within one front. Boundary points are
/// infinite; ties in objective values keep input order.
#[allow(clippy::needless_range_loop)]
pub fn crowding_distance(points: &[[f64; 2]]) -> Vec<f64> {
    let len = points.len();
    let mut dist = vec![0.0; len];
    if len <= 2 {
        return vec![f64::INFINITY; len];
    }
    for m in 0..2 {
        let mut order: Vec<usize> = (0..len).collect();
        order.sort_by(|&i, &j| points[i][m].total_cmp(&points[j][m]));
        let lo = points[order[0]][m];
        let hi = points[order[len - 1]][m];
        dist[order[0]] = f64::INFINITY;
        dist[order[len - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in 1..len - 1 {
            let gap = points[order[w + 1]][m] - points[order[w - 1]][m];
            dist[order[w]] += gap / range;
        }
    }
    dist
}

/// Total survival order of a pool under an epsilon level.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonRanking {
    /// Pool indices, best first.
    pub order: Vec<usize>,
    /// Position of each pool member in `order`.
    pub position: Vec<usize>,
    /// Non-dominated front index for epsilon-feasible members, `None` otherwise.
    pub front: Vec<Option<usize>>,
    pub crowding: Vec<f64>,
}

/// Members with `cv <= eps` are ordered by front, then crowding (descending);
/// the rest follow by ascending `cv`, equal-`cv` groups ordered by crowding.
/// Remaining ties keep pool order.
pub fn epsilon_rank(pool: &[Individual], eps: f64) -> EpsilonRanking {
    let n = pool.len();
    let mut front = vec![None; n];
    let mut crowding = vec![0.0; n];
    let mut order = Vec::with_capacity(n);

    let (inside, mut outside): (Vec<usize>, Vec<usize>) =
        (0..n).partition(|&i| pool[i].eval.cv <= eps);

    let pts: Vec<[f64; 2]> = inside.iter().map(|&i| pool[i].objectives()).collect();
    for (k, f) in nondominated_sort(&pts).into_iter().enumerate() {
        let members: Vec<usize> = f.iter().map(|&j| inside[j]).collect();
        push_by_crowding(pool, &members, &mut crowding, &mut order);
        for &i in &members {
            front[i] = Some(k);
        }
    }

    outside.sort_by(|&i, &j| pool[i].eval.cv.total_cmp(&pool[j].eval.cv).then(i.cmp(&j)));
    let mut start = 0;
    while start < outside.len() {
        let cv = pool[outside[start]].eval.cv;
        let mut end = start + 1;
        while end < outside.len() && pool[outside[end]].eval.cv == cv {
            end += 1;
        }
        push_by_crowding(pool, &outside[start..end], &mut crowding, &mut order);
        start = end;
    }

    let mut position = vec![0; n];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    EpsilonRanking {
        order,
        position,
        front,
        crowding,
    }
}

fn push_by_crowding(
    pool: &[Individual],
    members: &[usize],
    crowding: &mut [f64],
    order: &mut Vec<usize>,
) {
    let pts: Vec<[f64; 2]> = members.iter().map(|&i| pool[i].objectives()).collect();
    let cd = crowding_distance(&pts);
    let mut local: Vec<usize> = (0..members.len()).collect();
    local.sort_by(|&a, &b| cd[b].total_cmp(&cd[a]).then(members[a].cmp(&members[b])));
    for (&i, &d) in members.iter().zip(&cd) {
        crowding[i] = d;
    }
    order.extend(local.into_iter().map(|a| members[a]));
}

/// Keeps the best `n` of `pool` under [`epsilon_rank`]. `eps = 0` is the
/// constrained-dominance principle; `eps = inf` ignores constraints.
pub fn epsilon_select(pool: Vec<Individual>, n: usize, eps: f64) -> Population {
    let ranking = epsilon_rank(&pool, eps);
    let keep: Vec<usize> = ranking.order.into_iter().take(n).collect();
    let mut slots: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    let members = keep
        .into_iter()
        .map(|i| slots[i].take().expect("each index selected once"))
        .collect();
    Population::new(members, n)
}

/// 1-based ranks with ties sharing their mean rank.
pub fn mean_ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && values[idx[end]] == values[idx[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let mean = (start + 1 + end) as f64 / 2.0;
        for &i in &idx[start..end] {
            ranks[i] = mean;
        }
        start = end;
    }
    ranks
}

/// `rank(objective) + cv_weight * rank(cv)`, lower is better.
pub fn rankings_fitness(members: &[Individual], task: AuxTask, cv_weight: f64) -> Vec<f64> {
    let obj: Vec<f64> = members.iter().map(|m| task.objective(&m.eval)).collect();
    let cv: Vec<f64> = members.iter().map(|m| m.eval.cv).collect();
    rank_sum(&obj, &cv, cv_weight)
}

pub fn rank_sum(objective: &[f64], cv: &[f64], cv_weight: f64) -> Vec<f64> {
    mean_ranks(objective)
        .into_iter()
        .zip(mean_ranks(cv))
        .map(|(ro, rc)| ro + cv_weight * rc)
        .collect()
}

/// Keeps the `n` members with the lowest `fitness`, stable on ties.
pub fn truncate_by_fitness(pool: Vec<Individual>, fitness: &[f64], n: usize) -> Population {
    let mut idx: Vec<usize> = (0..pool.len()).collect();
    idx.sort_by(|&i, &j| fitness[i].total_cmp(&fitness[j]));
    idx.truncate(n);
    idx.sort_unstable();
    let mut it = idx.into_iter().peekable();
    let members = pool
        .into_iter()
        .enumerate()
        .filter_map(|(i, m)| {
            if it.peek() == Some(&i) {
                it.next();
                Some(m)
            } else {
                None
            }
        })
        .collect();
    Population::new(members, n)
}

/// Lexicographic (cv, objective) order used when rankings fitness is disabled.
pub fn cv_then_objective_key(members: &[Individual], task: AuxTask) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..members.len()).collect();
    idx.sort_by(|&i, &j| {
        let (a, b) = (&members[i].eval, &members[j].eval);
        a.cv.total_cmp(&b.cv)
            .then(task.objective(a).total_cmp(&task.objective(b)))
    });
    let mut key = vec![0.0; members.len()];
    for (pos, &i) in idx.iter().enumerate() {
        key[i] = pos as f64;
    }
    key
}

/// `k` binary tournaments with replacement over `0..len`. `better(a, b)`
/// returns true when `a` should win against `b`.
pub fn tournament_select<R, F>(len: usize, k: usize, better: F, rng: &mut R) -> Vec<usize>
where
    R: Rng + ?Sized,
    F: Fn(usize, usize) -> bool,
{
    assert!(len > 0, "tournament over an empty population");
    (0..k)
        .map(|_| {
            let a = rng.gen_range(0..len);
            let b = rng.gen_range(0..len);
            if better(b, a) {
                b
            } else {
                a
            }
        })
        .collect()
}

/// Decreasing constraint relaxation: `eps0 * (1 - t/tc)^cp` before `tc`,
/// zero afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonSchedule {
    pub eps0: f64,
    pub control_generations: f64,
    pub cp: f64,
}

impl EpsilonSchedule {
    pub fn new(eps0: f64, total_generations: usize, control_fraction: f64, cp: f64) -> Self {
        Self {
            eps0: eps0.max(0.0),
            control_generations: control_fraction * total_generations as f64,
            cp,
        }
    }

    pub fn level(&self, generation: usize) -> f64 {
        let t = generation as f64;
        if t >= self.control_generations {
            0.0
        } else {
            self.eps0 * (1.0 - t / self.control_generations).powf(self.cp)
        }
    }
}

/// Median constraint violation, the default initial epsilon level.
pub fn median_cv(members: &[Individual]) -> f64 {
    if members.is_empty() {
        return 0.0;
    }
    let mut cv: Vec<f64> = members.iter().map(|m| m.eval.cv).collect();
    cv.sort_by(f64::total_cmp);
    let mid = cv.len() / 2;
    if cv.len().is_multiple_of(2) {
        (cv[mid - 1] + cv[mid]) / 2.0
    } else {
        cv[mid]
    }
}

/// Pairs consecutive parents (wrapping for an odd pool), applies uniform
/// crossover and bit-flip mutation, and returns exactly `count` children.
pub fn make_offspring<R: Rng + ?Sized>(
    parents: &[&DecisionVector],
    count: usize,
    swap_prob: f64,
    mutation_rate: f64,
    rng: &mut R,
) -> Result<Vec<DecisionVector>> {
    let mut out = Vec::with_capacity(count);
    if parents.is_empty() {
        return Ok(out);
    }
    let mut i = 0;
    while out.len() < count {
        let a = parents[i % parents.len()];
        let b = parents[(i + 1) % parents.len()];
        let (mut c1, mut c2) = uniform_crossover(a, b, swap_prob, rng)?;
        bitflip_mutation(&mut c1, mutation_rate, rng);
        out.push(c1);
        if out.len() < count {
            bitflip_mutation(&mut c2, mutation_rate, rng);
            out.push(c2);
        }
        i += 2;
    }
    Ok(out)
}
