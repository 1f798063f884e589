//! Seeded random instances: Erdős–Rényi and preferential-attachment graphs
//! with a random prior-target label vector.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::problem::LabelVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GraphKind {
    /// Each (ordered, if directed) node pair joined with probability `p`.
    Er { p: f64 },
    /// Preferential attachment: a complete seed graph on `max(m, 2)` nodes,
    /// then every arriving node links to `m` distinct degree-weighted targets.
    /// Directed graphs orient each such edge uniformly at random.
    Ba { m: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub nodes: usize,
    pub kind: GraphKind,
    pub directed: bool,
    pub label_frac: f64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct SyntheticInstance {
    pub graph: Graph,
    pub labels: LabelVector,
}

pub fn generate(spec: &SyntheticSpec) -> Result<SyntheticInstance> {
    let n = spec.nodes;
    if n == 0 {
        return Err(Error::Config(
            "synthetic graph needs at least one node".into(),
        ));
    }
    if !(0.0..=1.0).contains(&spec.label_frac) {
        return Err(Error::Config("label fraction outside [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = match spec.kind {
        GraphKind::Er { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config("edge probability outside [0, 1]".into()));
            }
            erdos_renyi(n, p, spec.directed, &mut rng)
        }
        GraphKind::Ba { m } => {
            if m == 0 || n < m.max(2) {
                return Err(Error::Config(format!(
                    "preferential attachment needs m >= 1 and n >= max(m, 2); got m={m}, n={n}"
                )));
            }
            barabasi_albert(n, m, spec.directed, &mut rng)
        }
    };
    let names = (0..n).map(|i| format!("g{i}")).collect();
    let graph = Graph::with_names(names, spec.directed, edges)?;

    let k = (spec.label_frac * n as f64).ceil() as usize;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng);
    let mut bits = vec![false; n];
    for &i in &idx[..k.min(n)] {
        bits[i] = true;
    }
    if k == 0 {
        log::warn!("label fraction yields no prior targets");
    }
    Ok(SyntheticInstance {
        graph,
        labels: LabelVector::from_bits(bits),
    })
}

fn erdos_renyi<R: Rng>(n: usize, p: f64, directed: bool, rng: &mut R) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let admissible = if directed { u != v } else { u < v };
            if admissible && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn barabasi_albert<R: Rng>(n: usize, m: usize, directed: bool, rng: &mut R) -> Vec<(usize, usize)> {
    let seed_size = m.max(2);
    let mut edges = Vec::new();
    // one entry per edge endpoint, so sampling is degree-proportional
    let mut endpoints: Vec<usize> = Vec::new();
    for u in 0..seed_size {
        for v in u + 1..seed_size {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    for new in seed_size..n {
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        while targets.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((new, t));
            endpoints.extend([new, t]);
        }
    }
    if directed {
        for e in &mut edges {
            if rng.gen_bool(0.5) {
                *e = (e.1, e.0);
            }
        }
    }
    edges
}
