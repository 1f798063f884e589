//! The two-objective driver-node problem: minimize the number of selected
//! nodes, maximize how many of them are prior known drug targets, subject to
//! the controllability constraints of a [`ControlModel`].

use serde::{Deserialize, Serialize};

use crate::control::ControlModel;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Binary node selection; `true` marks a driver node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecisionVector(Vec<bool>);

impl DecisionVector {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![true; n])
    }

    pub fn from_selected(n: usize, selected: &[usize]) -> Result<Self> {
        let mut bits = vec![false; n];
        for &i in selected {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            bits[i] = true;
        }
        Ok(Self(bits))
    }

    /// Parses a string of `0`/`1` characters.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Usage(format!("invalid bit '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn to_bitstring(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = value;
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Indices of selected nodes, ascending.
    pub fn selected(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [bool] {
        &mut self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }
}

/// Prior drug-target indicator per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector(Vec<bool>);

impl LabelVector {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn target_count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn targets(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }
}

/// Outcome of [`load_labels`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelLoad {
    pub labels: LabelVector,
    pub matched: usize,
    /// Listed names that are not nodes of the graph.
    pub unmatched: Vec<String>,
}

/// Reads a target list: one gene identifier per line, optionally followed by
/// a tab and a `0`/`1` flag. Names missing from the graph are reported.
pub fn load_labels(g: &Graph, text: &str) -> Result<LabelLoad> {
    let mut bits = vec![false; g.num_nodes()];
    let mut unmatched = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let name = fields.next().unwrap_or_default();
        let flag = match fields.next() {
            None | Some("1") => true,
            Some("0") => false,
            Some(other) => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("label flag must be 0 or 1, got '{other}'"),
                })
            }
        };
        if !flag {
            continue;
        }
        match g.index_of(name) {
            Some(i) => bits[i] = true,
            None => unmatched.push(name.to_string()),
        }
    }
    let labels = LabelVector(bits);
    let matched = labels.target_count();
    if matched == 0 {
        log::warn!("label list matches no graph node; the second objective is constant");
    }
    Ok(LabelLoad {
        labels,
        matched,
        unmatched,
    })
}

/// Objective values and constraint status of one decision vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    /// Number of selected nodes (minimized).
    pub f1: usize,
    /// Selected prior targets (maximized).
    pub f2_raw: usize,
    /// `-f2_raw`, the minimized form used by the engine.
    pub f2_min: f64,
    pub cv: f64,
    pub feasible: bool,
}

impl Evaluation {
    /// Both coordinates in minimization form.
    pub fn objectives(&self) -> [f64; 2] {
        [self.f1 as f64, self.f2_min]
    }
}

/// A graph, a control model and the prior-target labels.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    graph: Graph,
    model: ControlModel,
    labels: LabelVector,
}

impl ProblemInstance {
    pub fn new(graph: Graph, model: ControlModel, labels: LabelVector) -> Result<Self> {
        model.check_graph(&graph)?;
        if labels.len() != graph.num_nodes() {
            return Err(Error::DimensionMismatch {
                expected: graph.num_nodes(),
                actual: labels.len(),
            });
        }
        if labels.target_count() == 0 {
            log::warn!("all-zero label vector; the front collapses to minimum-size solutions");
        }
        Ok(Self {
            graph,
            model,
            labels,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn model(&self) -> ControlModel {
        self.model
    }

    pub fn labels(&self) -> &LabelVector {
        &self.labels
    }

    pub fn dimension(&self) -> usize {
        self.graph.num_nodes()
    }

    /// Computes both objectives and the constraint violation. Runs exactly one
    /// violation computation, O(n + |E|).
    pub fn evaluate(&self, x: &DecisionVector) -> Result<Evaluation> {
        if x.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: x.len(),
            });
        }
        let report = self.model.violation(&self.graph, x)?;
        let (f1, f2_raw) = self.objective_counts(x);
        Ok(Evaluation {
            f1,
            f2_raw,
            f2_min: -(f2_raw as f64),
            cv: report.total_violation,
            feasible: report.is_feasible(),
        })
    }

    pub(crate) fn objective_counts(&self, x: &DecisionVector) -> (usize, usize) {
        let mut f1 = 0;
        let mut f2 = 0;
        for (&b, &l) in x.as_slice().iter().zip(self.labels.as_slice()) {
            if b {
                f1 += 1;
                if l {
                    f2 += 1;
                }
            }
        }
        (f1, f2)
    }

    /// Single-objective projection used by the auxiliary tasks: `f1` for
    /// task 1 and `f2_min` for task 2, with the full constraint set. Reads the
    /// cached evaluation, so it costs no budget.
    pub fn auxiliary_evaluate(eval: &Evaluation, which: AuxTask) -> (f64, f64) {
        let obj = match which {
            AuxTask::MinDrivers => eval.f1 as f64,
            AuxTask::MaxTargets => eval.f2_min,
        };
        (obj, eval.cv)
    }
}

/// The two auxiliary single-objective constrained tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AuxTask {
    MinDrivers,
    MaxTargets,
}

impl AuxTask {
    pub fn objective(self, eval: &Evaluation) -> f64 {
        ProblemInstance::auxiliary_evaluate(eval, self).0
    }
}
