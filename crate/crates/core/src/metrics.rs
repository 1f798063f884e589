//! Front quality indicators and the downstream evaluation pipeline:
//! reference fronts, hypervolume, IGD, driver-gene frequencies, drug
//! combination ranking, AUC and the Wilcoxon rank-sum test.

use std::collections::{BTreeSet, HashSet};

use libm::erfc;
use serde::{Deserialize, Serialize};

use crate::engine::{dominates, mean_ranks};
use crate::error::{Error, Result};
use crate::problem::DecisionVector;

/// Reference point of the hypervolume in normalized minimization space.
pub const HV_REFERENCE: [f64; 2] = [1.1, 1.1];

/// Default driver-frequency threshold; selection is strict (`freq > 0.8`).
pub const DRIVER_THRESHOLD: f64 = 0.8;

/// A set of `(f1, f2_raw)` points: `f1` minimized, `f2_raw` maximized.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Front {
    pub points: Vec<(f64, f64)>,
    #[serde(default)]
    pub provenance: String,
}

fn as_min(p: (f64, f64)) -> [f64; 2] {
    [p.0, -p.1]
}

impl Front {
    /// Keeps the non-dominated, de-duplicated points, sorted by `f1`.
    pub fn new(points: Vec<(f64, f64)>, provenance: impl Into<String>) -> Self {
        let mut kept: Vec<(f64, f64)> = Vec::new();
        for &p in &points {
            if points.iter().any(|&q| dominates(&as_min(q), &as_min(p))) {
                continue;
            }
            if !kept.contains(&p) {
                kept.push(p);
            }
        }
        kept.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)));
        Self {
            points: kept,
            provenance: provenance.into(),
        }
    }

    pub fn from_pf(pf: &[(usize, usize)], provenance: impl Into<String>) -> Self {
        Self::new(
            pf.iter().map(|&(a, b)| (a as f64, b as f64)).collect(),
            provenance,
        )
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }
}

/// Non-dominated subset of the pooled points of all fronts.
pub fn union_reference_front(fronts: &[Front]) -> Result<Front> {
    if fronts.is_empty() {
        return Err(Error::Metric(
            "reference front needs at least one front".into(),
        ));
    }
    let pooled = fronts
        .iter()
        .flat_map(|f| f.points.iter().copied())
        .collect();
    Ok(Front::new(pooled, "union"))
}

/// Min/max of each objective used for normalization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub f1_min: f64,
    pub f1_max: f64,
    pub f2_min: f64,
    pub f2_max: f64,
}

impl Bounds {
    /// Bounds spanning every point of every front; `None` if all are empty.
    pub fn from_fronts(fronts: &[&Front]) -> Option<Self> {
        let mut pts = fronts.iter().flat_map(|f| f.points.iter());
        let first = *pts.next()?;
        let mut b = Bounds {
            f1_min: first.0,
            f1_max: first.0,
            f2_min: first.1,
            f2_max: first.1,
        };
        for &(f1, f2) in pts {
            b.f1_min = b.f1_min.min(f1);
            b.f1_max = b.f1_max.max(f1);
            b.f2_min = b.f2_min.min(f2);
            b.f2_max = b.f2_max.max(f2);
        }
        Some(b)
    }

    /// Maps a raw point to normalized minimization coordinates in `[0, 1]`:
    /// `f1` scaled upward from its minimum, `f2` downward from its maximum.
    /// A degenerate axis maps to 0.
    pub fn normalize(&self, p: (f64, f64)) -> Result<[f64; 2]> {
        const TOL: f64 = 1e-9;
        if p.0 < self.f1_min - TOL
            || p.0 > self.f1_max + TOL
            || p.1 < self.f2_min - TOL
            || p.1 > self.f2_max + TOL
        {
            return Err(Error::Metric(format!(
                "point {p:?} outside normalization bounds"
            )));
        }
        let scale = |num: f64, den: f64| if den > 0.0 { num / den } else { 0.0 };
        Ok([
            scale(p.0 - self.f1_min, self.f1_max - self.f1_min),
            scale(self.f2_max - p.1, self.f2_max - self.f2_min),
        ])
    }
}

/// Exact two-objective hypervolume of minimization points up to
/// [`HV_REFERENCE`].
pub fn hypervolume_normalized(points: &[[f64; 2]]) -> f64 {
    let mut pts: Vec<[f64; 2]> = points
        .iter()
        .copied()
        .filter(|p| p[0] < HV_REFERENCE[0] && p[1] < HV_REFERENCE[1])
        .collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = HV_REFERENCE[1];
    for p in pts {
        if p[1] < ceiling {
            area += (HV_REFERENCE[0] - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    area
}

/// Hypervolume of a raw front after min-max normalization. Empty front: 0.
pub fn hypervolume(front: &Front, bounds: &Bounds) -> Result<f64> {
    let pts = front
        .points
        .iter()
        .map(|&p| bounds.normalize(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(hypervolume_normalized(&pts))
}

fn igd_points(front: &[[f64; 2]], reference: &[[f64; 2]]) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::Metric(
            "IGD needs a non-empty reference front".into(),
        ));
    }
    if front.is_empty() {
        return Ok(f64::INFINITY);
    }
    let total: f64 = reference
        .iter()
        .map(|r| {
            front
                .iter()
                .map(|p| ((p[0] - r[0]).powi(2) + (p[1] - r[1]).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / reference.len() as f64)
}

/// IGD in normalized objective space. Empty front: `+inf`.
pub fn igd(front: &Front, reference: &Front, bounds: &Bounds) -> Result<f64> {
    let norm = |f: &Front| {
        f.points
            .iter()
            .map(|&p| bounds.normalize(p))
            .collect::<Result<Vec<_>>>()
    };
    igd_points(&norm(front)?, &norm(reference)?)
}

/// IGD on raw objective values, without normalization.
pub fn igd_raw(front: &Front, reference: &Front) -> Result<f64> {
    let raw = |f: &Front| f.points.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>();
    igd_points(&raw(front), &raw(reference))
}

/// Fraction of solutions selecting each node.
pub fn gene_frequency(ps: &[DecisionVector]) -> Result<Vec<f64>> {
    let first = ps
        .first()
        .ok_or_else(|| Error::Metric("gene frequency of an empty solution set".into()))?;
    let n = first.len();
    let mut counts = vec![0usize; n];
    for x in ps {
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: x.len(),
            });
        }
        for i in x.selected() {
            counts[i] += 1;
        }
    }
    Ok(counts
        .into_iter()
        .map(|c| c as f64 / ps.len() as f64)
        .collect())
}

/// Nodes whose frequency is strictly above `threshold`.
pub fn select_drivers(freq: &[f64], threshold: f64) -> Vec<usize> {
    freq.iter()
        .enumerate()
        .filter_map(|(i, &f)| (f > threshold).then_some(i))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrugCombination {
    pub id: String,
    pub targets: Vec<String>,
    pub efficacious: bool,
}

/// Parses `combo_id<TAB>label<TAB>gene1,gene2,...` lines.
pub fn parse_drug_combinations(text: &str) -> Result<Vec<DrugCombination>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Parse {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 3 {
            return Err(err(
                "expected combo_id, label and target list separated by tabs",
            ));
        }
        let efficacious = match fields[1].trim() {
            "1" => true,
            "0" => false,
            _ => return Err(err("label must be 0 or 1")),
        };
        let targets: Vec<String> = fields[2]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect();
        if targets.is_empty() {
            return Err(err("combination without targets"));
        }
        out.push(DrugCombination {
            id: fields[0].trim().to_string(),
            targets,
            efficacious,
        });
    }
    Ok(out)
}

/// Turns per-combination driver match counts into probabilities.
pub trait ScoringPolicy {
    fn probabilities(&self, scores: &[usize]) -> Vec<f64>;
}

/// `score / max(1, max score)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxNormalized;

impl ScoringPolicy for MaxNormalized {
    fn probabilities(&self, scores: &[usize]) -> Vec<f64> {
        let max = scores.iter().copied().max().unwrap_or(0).max(1) as f64;
        scores.iter().map(|&s| s as f64 / max).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedCombination {
    pub id: String,
    pub score: usize,
    /// Competition rank (1, 2, 2, 4, ...).
    pub rank: usize,
    pub probability: f64,
    pub efficacious: bool,
}

pub fn rank_drug_combinations(
    drivers: &HashSet<String>,
    combos: &[DrugCombination],
) -> Vec<RankedCombination> {
    rank_drug_combinations_with(drivers, combos, &MaxNormalized)
}

/// Scores each combination by how many of its distinct targets are drivers
/// and sorts by descending score, stable on ties.
pub fn rank_drug_combinations_with<P: ScoringPolicy + ?Sized>(
    drivers: &HashSet<String>,
    combos: &[DrugCombination],
    policy: &P,
) -> Vec<RankedCombination> {
    let scores: Vec<usize> = combos
        .iter()
        .map(|c| {
            let distinct: BTreeSet<&String> = c.targets.iter().collect();
            distinct
                .into_iter()
                .filter(|t| drivers.contains(*t))
                .count()
        })
        .collect();
    let probs = policy.probabilities(&scores);
    let mut order: Vec<usize> = (0..combos.len()).collect();
    order.sort_by(|&a, &b| scores[b].cmp(&scores[a]));
    let mut out: Vec<RankedCombination> = Vec::with_capacity(combos.len());
    for (pos, &i) in order.iter().enumerate() {
        let rank = match out.last() {
            Some(prev) if prev.score == scores[i] => prev.rank,
            _ => pos + 1,
        };
        out.push(RankedCombination {
            id: combos[i].id.clone(),
            score: scores[i],
            rank,
            probability: probs[i],
            efficacious: combos[i].efficacious,
        });
    }
    out
}

/// Probability that a random positive outscores a random negative, ties
/// counting one half (Mann-Whitney form).
pub fn auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: scores.len(),
            actual: labels.len(),
        });
    }
    let pos = labels.iter().filter(|&&l| l).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::UndefinedAuc);
    }
    let ranks = mean_ranks(scores);
    let pos_rank_sum: f64 = ranks
        .iter()
        .zip(labels)
        .filter_map(|(&r, &l)| l.then_some(r))
        .sum();
    let u = pos_rank_sum - (pos * (pos + 1)) as f64 / 2.0;
    Ok(u / (pos * neg) as f64)
}

/// Largest sample size per group for which the exact null distribution is
/// enumerated.
pub const EXACT_RANK_SUM_MAX: usize = 10;

/// Two-sided Wilcoxon rank-sum p-value. Exact (over all rank assignments,
/// mid-ranks for ties) when both samples have at most
/// [`EXACT_RANK_SUM_MAX`] values, otherwise the normal approximation with
/// tie-corrected variance.
pub fn rank_sum_compare(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Metric(
            "rank-sum test needs two non-empty samples".into(),
        ));
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = mean_ranks(&pooled);
    let (n1, n2) = (a.len(), b.len());
    let total = n1 + n2;
    if n1 <= EXACT_RANK_SUM_MAX && n2 <= EXACT_RANK_SUM_MAX {
        // doubled mid-ranks are integers
        let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
        let observed: usize = doubled[..n1].iter().sum();
        let centre = (n1 * (total + 1)) as i64;
        let max_sum: usize = doubled.iter().sum();
        // ways[k][s]: subsets of size k with doubled rank sum s
        let mut ways = vec![vec![0f64; max_sum + 1]; n1 + 1];
        ways[0][0] = 1.0;
        for &r in &doubled {
            for k in (1..=n1).rev() {
                for s in (r..=max_sum).rev() {
                    let add = ways[k - 1][s - r];
                    if add > 0.0 {
                        ways[k][s] += add;
                    }
                }
            }
        }
        let obs_dev = (observed as i64 - centre).abs();
        let (mut extreme, mut all) = (0.0, 0.0);
        for (s, &w) in ways[n1].iter().enumerate() {
            all += w;
            if (s as i64 - centre).abs() >= obs_dev {
                extreme += w;
            }
        }
        return Ok((extreme / all).min(1.0));
    }

    let w: f64 = ranks[..n1].iter().sum();
    let mean = n1 as f64 * (total + 1) as f64 / 2.0;
    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let nf = total as f64;
    let var = n1 as f64 * n2 as f64 / 12.0 * ((nf + 1.0) - tie_term / (nf * (nf - 1.0)));
    if var <= 0.0 {
        return Ok(1.0);
    }
    let z = (w - mean).abs() / var.sqrt();
    Ok(erfc(z / std::f64::consts::SQRT_2).min(1.0))
}
