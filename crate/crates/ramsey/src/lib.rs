//! Brute-force combinatorial core.
//!
//! * [`solve_homogeneous`]: lexicographically least homogeneous set of a given
//!   size, by depth-first extension with colour-consistency pruning.
//! * [`all_homogeneous`]: the exhaustive oracle, in the same order.
//! * [`ramsey_window_bound`]: a window size that provably hosts a homogeneous
//!   set of a requested size (classical recursive upper bound).
//! * [`build_product_coloring`]: combine colourings so that homogeneity for the
//!   combination implies homogeneity for each component.

mod bound;
mod product;
mod search;

pub use bound::ramsey_window_bound;
pub use product::{build_product_coloring, product_digits};
pub use search::{all_homogeneous, solve_homogeneous, solve_homogeneous_parallel, solve_with, HomSearch, SearchLimits};

use thiserror::Error;
use wlab_problems::ProblemError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamseyError {
    #[error("no homogeneous set of size {size} in window {window}")]
    NoneExists { size: usize, window: u64 },
    #[error("requested size {size} is below the arity {arity}")]
    SizeBelowArity { size: usize, arity: usize },
    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("bound overflows 64 bits")]
    Overflow,
    #[error("bound computation too large for desk scale")]
    TooLarge,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

pub type Result<T> = std::result::Result<T, RamseyError>;
