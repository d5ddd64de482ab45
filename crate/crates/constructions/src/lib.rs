//! Executable reductions between finite-window problems.
//!
//! Each reduction is a pair `(K, H)`: `K` maps a source instance to a target
//! instance and `H` maps a target solution back to a source solution. Strong
//! reductions see only the target solution; weak ones may also read the
//! original instance. [`registry`] lists every reduction by name.

pub mod chain;
mod coh;
mod delayed;
mod ivt;
mod jump;
mod lower_bound;
mod min;
mod plus;
mod product;
mod registry;
mod transport;
mod trees;

pub use coh::{coh_to_rt22, CohToRt22, COH_SLACK};
pub use delayed::{delayed_component, delayed_parallelization, DelayedParallelization};
pub use ivt::{decode_rational, encode_rational, ivt_decode, ivt_to_cluster, IvtToCluster};
pub use jump::{grow_homogeneous, jump_coloring, stable_to_sequence, GrowHomogeneous, JumpColoring};
pub use lower_bound::{interleave_array, lower_bound_coloring, nested_value, LowerBound};
pub use min::{min_choice_instance, min_via_choice, min_via_choice_decode, MinViaChoice, DECIDED_CODES};
pub use plus::{plus_coloring, PlusColoring};
pub use product::ProductReduction;
pub use registry::{find, registry, Reduction, ReductionInfo, Strength};
pub use transport::{coh_sets_from_coloring, transport_coloring, transport_solution, Transport};
pub use trees::{
    enum_tree_to_sequence, kl_plus_to_kl, project_first, sequence_to_cluster_tree, KlPlusToKl, PairTree,
};

use thiserror::Error;
use wlab_encodings::EncodingError;
use wlab_problems::ProblemError;
use wlab_ramsey::RamseyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Ramsey(#[from] RamseyError),
    /// The instance or solution has the wrong shape for this reduction.
    #[error("wrong input shape: {0}")]
    Shape(String),
    #[error("missing ground-truth annotation: {0}")]
    MissingAnnotation(String),
    #[error("window exhausted at size {reached} before reaching {target}")]
    WindowExhausted { reached: usize, target: usize },
    /// The target solution is too short to carry a source solution.
    #[error("solution too short: {0}")]
    Starved(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

impl ConstructionError {
    /// Errors that signal a window below the instance's demands rather than
    /// a wrong construction.
    pub fn is_starvation(&self) -> bool {
        matches!(self, ConstructionError::WindowExhausted { .. } | ConstructionError::Starved(_))
    }
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

pub(crate) fn shape(what: impl Into<String>) -> ConstructionError {
    ConstructionError::Shape(what.into())
}
