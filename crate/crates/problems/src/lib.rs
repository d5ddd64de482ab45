//! Finite-window models of Ramsey-type and choice problems.
//!
//! A genuine instance (a colouring of `[ℕ]^n`, a stream, a tree) is replaced by
//! its restriction to a window `{0..W-1}` plus ground-truth annotations about
//! its asymptotic behaviour. Checkers consult both, so a non-computable
//! problem becomes decidable on annotated test data.
//!
//! JSON formats:
//!
//! * Colouring: `{"arity":n, "colors":k | {"unbounded":b}, "window":W,
//!   "table":[…], "annotation":{"limit":<colouring>, "horizon":h}}` where the
//!   table lists colours of the `n`-subsets of the window in increasing
//!   `ϑ_n` rank.
//! * Instances and solutions are tagged: `{"kind":"coloring","value":…}`.
//!   Rationals are strings `"p/q"`.

mod coh;
mod coloring;
mod instance;
mod interval;
mod stability;
mod tree;

pub use coh::{check_cohesive_within, CohAnnotation, CohSequence, CohSet, CohVerdict};
pub use coloring::{check_homogeneous, colex_set, extendable, homogeneous_color, theta_set, Colors, Coloring, HomSet, StableAnnotation};
pub use instance::{
    check, coproduct_instance, jump_instance, least_omitted, parallel_instance, product_instance, ClosedSetInstance,
    Instance, JumpInstance, Problem, Side, Solution, Verdict,
};
pub use interval::{parse_rational, IntervalShrink};
pub use stability::{is_stable_up_to, Stability};
pub use tree::{Alphabet, TreeInstance, TreeMode};

use thiserror::Error;
use wlab_encodings::EncodingError;

/// Errors raised while building or checking instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error("element {element} outside the window of size {window}")]
    OutOfWindow { element: u64, window: u64 },
    #[error("expected a set of size {expected}, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("set is not strictly increasing: {0:?}")]
    NotIncreasing(Vec<u64>),
    #[error("a set of size {size} has no subsets of size {arity}")]
    TooSmall { size: usize, arity: usize },
    #[error("colour {value} not in a range of {colors} colours")]
    BadColor { value: u32, colors: u32 },
    #[error("table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("window {window} too large for arity {arity}")]
    WindowTooLarge { window: u64, arity: usize },
    #[error("invalid annotation: {0}")]
    BadAnnotation(String),
    #[error("invalid tree: {0}")]
    BadTree(String),
    #[error("invalid interval sequence: {0}")]
    BadInterval(String),
    #[error("approximation sequence carries no stabilisation witness")]
    NotStabilized,
    #[error("mismatched problem and instance: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, ProblemError>;
