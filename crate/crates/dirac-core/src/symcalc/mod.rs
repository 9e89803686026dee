//! Exact symbolic Cartan calculus on `ℝⁿ` and `Tⁿ`.
//!
//! Scalar coefficients live in polynomial or trigonometric-polynomial rings
//! ([`scalar`]), on top of which sit forms ([`form`]), vector fields and
//! generalized sections with the Courant bracket ([`vector`]), and the
//! foliated exterior derivative along a distribution ([`foliated`]).
//! Identities like `d² = 0` or `cos² + sin² = 1` are exact term
//! cancellations, never tolerance checks.

pub mod foliated;
pub mod form;
pub mod parse;
pub mod sample;
pub mod scalar;
pub mod vector;

use thiserror::Error;

pub use foliated::{foliated_d, Distribution, FoliatedForm};
pub use form::{index_tuples, KForm};
pub use parse::parse_scalar;
pub use scalar::{Domain, DomainKind, FreqParity, ScalarField};
pub use vector::{courant_bracket, pairing_field, GSection, VectorField};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CalcError {
    #[error("mixed domains")]
    DomainMismatch,
    #[error("{what} is not available on {domain:?} domains")]
    UnsupportedOnDomain {
        what: &'static str,
        domain: DomainKind,
    },
    #[error("trigonometric frequencies must be half-integers")]
    NotHalfInteger,
    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },
    #[error("expected {expected} components/degree, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("a distribution needs at least one spanning field")]
    EmptyFrame,
    #[error("declared rank {rank} exceeds the domain dimension {dim}")]
    RankExceedsDimension { rank: usize, dim: usize },
    #[error("distribution is not involutive: [V{i}, V{j}] leaves the span over the coefficient ring")]
    NonInvolutive { i: usize, j: usize },
    #[error("parse error at byte {position}: {message}")]
    Parse { message: String, position: usize },
}
