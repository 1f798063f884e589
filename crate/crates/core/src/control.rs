//! Structural controllability constraints.
//!
//! Each control framework turns a driver-node selection into a set of
//! inequality constraints; a selection is feasible (the network is
//! controllable) exactly when every constraint holds. Violations are summed
//! deficits, so they are zero at feasibility and never grow when a node is
//! added to the selection.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::problem::DecisionVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ControlModel {
    /// Dominating set: every node selected or adjacent to a selected node.
    Mds,
    /// Directed feedback vertex set: all sources selected and the residual
    /// graph acyclic.
    Dfvs,
    /// Edge cover: every edge has a selected endpoint.
    Ncua,
}

impl ControlModel {
    pub const ALL: [ControlModel; 3] = [ControlModel::Mds, ControlModel::Dfvs, ControlModel::Ncua];

    pub fn requires_directed(self) -> bool {
        matches!(self, ControlModel::Dfvs)
    }

    pub fn check_graph(self, g: &Graph) -> Result<()> {
        if self.requires_directed() != g.is_directed() {
            let want = if self.requires_directed() {
                "a directed"
            } else {
                "an undirected"
            };
            return Err(Error::Usage(format!("model {self} requires {want} graph")));
        }
        Ok(())
    }

    /// Aggregate violation for `x` under this model.
    pub fn violation(self, g: &Graph, x: &DecisionVector) -> Result<ConstraintReport> {
        match self {
            ControlModel::Mds => violation_mds(g, x),
            ControlModel::Dfvs => violation_dfvs(g, x),
            ControlModel::Ncua => violation_ncua(g, x),
        }
    }

    /// Same as [`violation`](Self::violation) but with the per-constraint
    /// deficit list filled in.
    pub fn diagnose(self, g: &Graph, x: &DecisionVector) -> Result<ConstraintReport> {
        match self {
            ControlModel::Mds => mds(g, x, true),
            ControlModel::Dfvs => dfvs(g, x, true),
            ControlModel::Ncua => ncua(g, x, true),
        }
    }
}

impl fmt::Display for ControlModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ControlModel::Mds => "mds",
            ControlModel::Dfvs => "dfvs",
            ControlModel::Ncua => "ncua",
        })
    }
}

impl FromStr for ControlModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mds" => Ok(ControlModel::Mds),
            "dfvs" => Ok(ControlModel::Dfvs),
            "ncua" => Ok(ControlModel::Ncua),
            other => Err(Error::Usage(format!("unknown control model '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub total_violation: f64,
    pub num_constraints: usize,
    pub violated_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Vec<f64>>,
}

impl ConstraintReport {
    pub fn is_feasible(&self) -> bool {
        self.violated_count == 0
    }

    /// Violation per constraint, comparable across graphs of different size.
    pub fn normalized_violation(&self) -> f64 {
        if self.num_constraints == 0 {
            0.0
        } else {
            self.total_violation / self.num_constraints as f64
        }
    }
}

fn check_len(g: &Graph, x: &DecisionVector) -> Result<()> {
    if x.len() != g.num_nodes() {
        return Err(Error::DimensionMismatch {
            expected: g.num_nodes(),
            actual: x.len(),
        });
    }
    Ok(())
}

/// One constraint per node: `x_i + sum of x_j over neighbors >= 1`.
pub fn violation_mds(g: &Graph, x: &DecisionVector) -> Result<ConstraintReport> {
    mds(g, x, false)
}

/// One constraint per edge: at least one endpoint selected.
pub fn violation_ncua(g: &Graph, x: &DecisionVector) -> Result<ConstraintReport> {
    ncua(g, x, false)
}

/// Unselected source nodes plus residual nodes still on a directed cycle.
pub fn violation_dfvs(g: &Graph, x: &DecisionVector) -> Result<ConstraintReport> {
    dfvs(g, x, false)
}

pub fn is_feasible(model: ControlModel, g: &Graph, x: &DecisionVector) -> Result<bool> {
    model.check_graph(g)?;
    Ok(model.violation(g, x)?.is_feasible())
}

fn mds(g: &Graph, x: &DecisionVector, detail: bool) -> Result<ConstraintReport> {
    if g.is_directed() {
        return Err(Error::Usage("MDS requires an undirected graph".into()));
    }
    check_len(g, x)?;
    let bits = x.as_slice();
    let mut uncovered = 0usize;
    let mut deficits = detail.then(|| Vec::with_capacity(g.num_nodes()));
    for i in 0..g.num_nodes() {
        let covered = bits[i] || g.out_neighbors(i).iter().any(|&j| bits[j]);
        if !covered {
            uncovered += 1;
        }
        if let Some(d) = deficits.as_mut() {
            d.push(if covered { 0.0 } else { 1.0 });
        }
    }
    Ok(ConstraintReport {
        total_violation: uncovered as f64,
        num_constraints: g.num_nodes(),
        violated_count: uncovered,
        detail: deficits,
    })
}

fn ncua(g: &Graph, x: &DecisionVector, detail: bool) -> Result<ConstraintReport> {
    if g.is_directed() {
        return Err(Error::Usage("NCUA requires an undirected graph".into()));
    }
    check_len(g, x)?;
    let bits = x.as_slice();
    let mut uncovered = 0usize;
    let mut deficits = detail.then(|| Vec::with_capacity(g.num_edges()));
    for &(u, v) in g.edges() {
        let covered = bits[u] || bits[v];
        if !covered {
            uncovered += 1;
        }
        if let Some(d) = deficits.as_mut() {
            d.push(if covered { 0.0 } else { 1.0 });
        }
    }
    Ok(ConstraintReport {
        total_violation: uncovered as f64,
        num_constraints: g.num_edges(),
        violated_count: uncovered,
        detail: deficits,
    })
}

fn dfvs(g: &Graph, x: &DecisionVector, detail: bool) -> Result<ConstraintReport> {
    if !g.is_directed() {
        return Err(Error::Usage("DFVS requires a directed graph".into()));
    }
    check_len(g, x)?;
    let bits = x.as_slice();
    let mut num_sources = 0usize;
    let mut missing_sources = 0usize;
    let mut deficits = detail.then(Vec::new);
    for (v, &selected) in bits.iter().enumerate() {
        if g.in_degree(v) == 0 {
            num_sources += 1;
            if !selected {
                missing_sources += 1;
            }
            if let Some(d) = deficits.as_mut() {
                d.push(if selected { 0.0 } else { 1.0 });
            }
        }
    }
    let cyclic = g.cyclic_node_count(bits)?;
    if let Some(d) = deficits.as_mut() {
        d.push(cyclic as f64);
    }
    Ok(ConstraintReport {
        total_violation: (missing_sources + cyclic) as f64,
        num_constraints: num_sources + 1,
        violated_count: missing_sources + usize::from(cyclic > 0),
        detail: deficits,
    })
}
