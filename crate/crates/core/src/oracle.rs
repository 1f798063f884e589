//! Exhaustive Pareto front of small instances, the ground truth for solver
//! tests.

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::problem::{DecisionVector, ProblemInstance};

pub const DEFAULT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleFront {
    /// Exact front as `(f1, f2_raw)`, ascending in `f1`.
    pub pf: Vec<(usize, usize)>,
    /// Every decision vector attaining each front point.
    pub ps: Vec<Vec<DecisionVector>>,
    pub instance_hash: String,
}

/// Best feasible `f2` for each driver count; merging two tables is
/// associative and commutative.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BestTable(Vec<Option<usize>>);

impl BestTable {
    fn new(n: usize) -> Self {
        Self(vec![None; n + 1])
    }

    fn offer(&mut self, f1: usize, f2: usize) {
        let slot = &mut self.0[f1];
        if slot.is_none_or(|b| f2 > b) {
            *slot = Some(f2);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (f1, v) in other.0.into_iter().enumerate() {
            if let Some(f2) = v {
                self.offer(f1, f2);
            }
        }
        self
    }

    /// Points not dominated by any smaller-`f1` entry.
    fn front(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut best_so_far: Option<usize> = None;
        for (f1, v) in self.0.iter().enumerate() {
            if let Some(f2) = *v {
                if best_so_far.is_none_or(|b| f2 > b) {
                    out.push((f1, f2));
                    best_so_far = Some(f2);
                }
            }
        }
        out
    }
}

/// Visits every vector whose top `n - low_bits` bits equal `prefix`, in Gray
/// code order over the low bits, with incrementally maintained `(f1, f2)`.
fn scan<F>(p: &ProblemInstance, low_bits: usize, prefix: u64, mut visit: F) -> Result<()>
where
    F: FnMut(&DecisionVector, usize, usize) -> Result<()>,
{
    let n = p.dimension();
    let labels = p.labels();
    let mut x = DecisionVector::zeros(n);
    let (mut f1, mut f2) = (0usize, 0usize);
    for i in low_bits..n {
        if (prefix >> (i - low_bits)) & 1 == 1 {
            x.set(i, true);
            f1 += 1;
            f2 += usize::from(labels.get(i));
        }
    }
    let total: u64 = 1 << low_bits;
    for k in 0..total {
        if k > 0 {
            let i = k.trailing_zeros() as usize;
            x.flip(i);
            let delta_l = usize::from(labels.get(i));
            if x.get(i) {
                f1 += 1;
                f2 += delta_l;
            } else {
                f1 -= 1;
                f2 -= delta_l;
            }
        }
        visit(&x, f1, f2)?;
    }
    Ok(())
}

fn chunks(n: usize, threads: usize) -> (usize, u64) {
    let mut prefix_bits = 0;
    while prefix_bits < n && (1usize << prefix_bits) < threads.max(1) * 4 {
        prefix_bits += 1;
    }
    if threads <= 1 {
        prefix_bits = 0;
    }
    (n - prefix_bits, 1u64 << prefix_bits)
}

/// Enumerates all `2^n` selections and returns the exact feasible front with
/// every attaining vector. Refuses instances above `n_limit`.
pub fn enumerate_pareto(p: &ProblemInstance, n_limit: usize) -> Result<OracleFront> {
    enumerate_pareto_threads(p, n_limit, 1)
}

/// [`enumerate_pareto`] split over `threads` workers by bit prefix.
pub fn enumerate_pareto_threads(
    p: &ProblemInstance,
    n_limit: usize,
    threads: usize,
) -> Result<OracleFront> {
    let n = p.dimension();
    if n > n_limit || n >= 63 {
        return Err(Error::OverLimit {
            dimension: n,
            limit: n_limit,
        });
    }
    let (low_bits, num_chunks) = chunks(n, threads);
    let model = p.model();
    let g = p.graph();

    let run = || -> Result<OracleFront> {
        let table = (0..num_chunks)
            .into_par_iter()
            .map(|prefix| {
                let mut t = BestTable::new(n);
                scan(p, low_bits, prefix, |x, f1, f2| {
                    if model.violation(g, x)?.is_feasible() {
                        t.offer(f1, f2);
                    }
                    Ok(())
                })?;
                Ok::<_, Error>(t)
            })
            .try_reduce(|| BestTable::new(n), |a, b| Ok(a.merge(b)))?;
        let pf = table.front();

        let mut ps: Vec<Vec<DecisionVector>> = (0..num_chunks)
            .into_par_iter()
            .map(|prefix| {
                let mut found = vec![Vec::new(); pf.len()];
                scan(p, low_bits, prefix, |x, f1, f2| {
                    if let Ok(k) = pf.binary_search(&(f1, f2)) {
                        if model.violation(g, x)?.is_feasible() {
                            found[k].push(x.clone());
                        }
                    }
                    Ok(())
                })?;
                Ok::<_, Error>(found)
            })
            .try_reduce(
                || vec![Vec::new(); pf.len()],
                |mut a, b| {
                    for (dst, src) in a.iter_mut().zip(b) {
                        dst.extend(src);
                    }
                    Ok(a)
                },
            )?;
        for set in &mut ps {
            set.sort();
        }
        Ok(OracleFront {
            pf,
            ps,
            instance_hash: instance_hash(p),
        })
    };

    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?
        .install(run)
}

/// SHA-256 over model, directedness, edges and labels.
pub fn instance_hash(p: &ProblemInstance) -> String {
    let g = p.graph();
    let mut h = Sha256::new();
    h.update(p.model().to_string().as_bytes());
    h.update([u8::from(g.is_directed())]);
    h.update((g.num_nodes() as u64).to_le_bytes());
    for &(u, v) in g.edges() {
        h.update((u as u64).to_le_bytes());
        h.update((v as u64).to_le_bytes());
    }
    for &l in p.labels().as_slice() {
        h.update([u8::from(l)]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
