//! Multi-objective structural network control.
//!
//! Driver-node identification on gene interaction networks posed as a
//! two-objective constrained binary problem (few driver nodes, many prior
//! drug targets among them) under dominating-set, feedback-vertex-set and
//! edge-cover controllability constraints, solved with a multi-population
//! multitasking evolutionary algorithm.
//!
//! * [`graph`] network representation and structural routines
//! * [`control`] constraint models and violation measures
//! * [`problem`] objectives, labels and evaluation
//! * [`engine`] operators, sorting and selection
//! * [`solver`] LSCV-MCEA
//! * [`baselines`] NSGA-II-CDP and greedy driver sets
//! * [`oracle`] exhaustive fronts for small instances
//! * [`metrics`] HV, IGD, AUC, rank-sum test, drug ranking
//! * [`synth`] seeded random instances

pub mod baselines;
pub mod control;
pub mod engine;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod problem;
pub mod solver;
pub mod synth;

pub use control::{ConstraintReport, ControlModel};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, Graph};
pub use problem::{DecisionVector, Evaluation, LabelVector, ProblemInstance};
pub use solver::{solve, RunResult, SolverConfig};
