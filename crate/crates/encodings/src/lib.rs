//! Coding machinery for finite-window models of Ramsey-type problems.
//!
//! * Cantor pairing `⟨n,k⟩ = ½(n+k+1)(n+k)+k` and its inverse.
//! * Right-nested tupling `⟨a,b,c⟩ = ⟨a,⟨b,c⟩⟩`.
//! * The numbering `ϑ_n` of strictly increasing `n`-element sets.
//! * Streams (finite prefixes of points of Baire space with an optional
//!   eventual-behaviour annotation) and interleaved projection.
//! * The enumeration-to-characteristic-function bridge.
//!
//! All arithmetic is 64-bit unsigned; overflow is reported, never wrapped.

mod pairing;
mod stream;
mod subsets;
mod theta;

pub use pairing::{pair, tuple, unpair, untuple};
pub use stream::{interleave_project, Behavior, Stream};
pub use subsets::{binomial, colex_rank, colex_unrank, enumeration_to_char_subset, is_strictly_increasing, Subsets};
pub use theta::{theta_decode, theta_encode, SubsetCode};

use thiserror::Error;

/// Errors raised by the encoding layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("arithmetic overflow in {op}")]
    Overflow { op: &'static str },
    #[error("tuple of length zero")]
    EmptyTuple,
    #[error("arity must be at least 1")]
    ZeroArity,
    #[error("set is not strictly increasing: {0:?}")]
    NotIncreasing(Vec<u64>),
    #[error("expected a set of size {expected}, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("insufficient prefix: stream {stream} needs index {needed}")]
    InsufficientPrefix { stream: usize, needed: u64 },
    #[error("no stream with index {0}")]
    NoSuchStream(u64),
    #[error("invalid stream annotation: {0}")]
    BadAnnotation(String),
}

pub type Result<T> = std::result::Result<T, EncodingError>;
