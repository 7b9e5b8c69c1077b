//! Numerical laboratory for the dynamics of `f(z) = z cos z + 2π`.
//!
//! The library implements the change-of-variable maps that compare the
//! wandering components of `f` near the positive real axis with the
//! parabolic basin of the quadratic `q(z) = z - π z²` (the cauliflower),
//! verifies the inequality bounds driving that comparison by dense
//! sampling, discretizes both kinds of component on pixel grids, and
//! measures Hausdorff distances between rescaled components as well as
//! hyperbolic contraction along real orbits.
//!
//! All sampling in the library is deterministic: identical inputs produce
//! identical outputs byte for byte, which the file-emitting drivers rely on.

pub mod basin;
pub mod cli;
pub mod experiments;
pub mod geom;
pub mod maps;
pub mod metrics;
pub mod real_dynamics;
pub mod verify;

/// Smallest component index at which the trap-disc chain is certified:
/// for `n >= N0` the map sends the off-axis disc at index `n` strictly
/// inside the one at index `n + 1`, so orbit membership in the chain is a
/// sound "inside" certificate.
pub const N0: u32 = 5;

/// Errors shared across the laboratory's modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An input hit a pole or another point where a map is undefined.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    /// A root scan found no sign change to bisect.
    #[error("bracket failure: {0}")]
    BracketFailure(String),
    /// A bounded search exhausted its budget without a witness.
    #[error("not found: {0}")]
    NotFound(String),
    /// A threshold was not reached within the allowed index range.
    #[error("not reached: {0}")]
    NotReached(String),
    /// A set operation requires at least one point.
    #[error("empty point set: {0}")]
    EmptySet(String),
    /// A point lies outside the hyperbolic frame it was measured in.
    #[error("outside frame: {0}")]
    OutsideFrame(String),
    /// A documented precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
