//! Property-based harness for the registered reductions: seeded instance
//! generators carrying ground-truth annotations, oracle solvers for target
//! instances, and the contract checker producing one report per reduction.

mod generate;
mod harness;
mod mutate;
mod oracle;
mod report;
mod verify;

pub use generate::{
    coh_sequence, coloring_jump, enumerated_tree, generate_instances, generate_one, intervals, nested_streams,
    stable_coloring, stream, Family, COH_SETS, MAX_INTERVAL_STAGES, MAX_TREE_DEPTH, PARALLEL_COMPONENTS,
};
pub use harness::{plan, plans, Plan, TargetOracle};
pub use mutate::corrupt;
pub use oracle::{cohesive_candidates, homogeneous_solutions, target_solutions, OracleConfig, OracleOutput};
pub use report::{Coverage, FailureWitness, TrialReport};
pub use verify::{verify_all, verify_reduction, VerifyConfig};

use thiserror::Error;
use wlab_constructions::ConstructionError;
use wlab_problems::ProblemError;
use wlab_ramsey::RamseyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("family {family:?} cannot generate instances of {problem}")]
    IncompatibleFamily { problem: String, family: Family },
    #[error("no reduction named {0:?}")]
    UnknownReduction(String),
    #[error("oracle cannot solve this target: {0}")]
    Oracle(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Ramsey(#[from] RamseyError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

pub type Result<T> = std::result::Result<T, VerifyError>;
