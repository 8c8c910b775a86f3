//! Decomposition-based multi-objective evolutionary optimization (MOEA/D)
//! with adaptive weight vectors, plus the benchmark problems, IGD metric and
//! experiment harness used to evaluate it.

pub mod adaptation;
pub mod archive;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod objective;
pub mod optimizer;
pub mod problems;
pub mod scalarization;
pub mod variation;
pub mod weights;

pub use adaptation::{AdaptationRecord, AdaptationSchedule, Subproblem};
pub use archive::Archive;
pub use error::{Error, Result};
pub use metrics::igd;
pub use objective::{dominates, euclidean_distance, normalize, Solution};
pub use optimizer::{run, AlgorithmParams, Optimizer, RunResult};
pub use problems::{make_problem, Problem, PROBLEM_NAMES};
pub use scalarization::{optimal_weight, tchebycheff, ReferencePoint, Weight};
pub use variation::VariationParams;
