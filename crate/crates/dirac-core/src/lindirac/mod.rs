//! Exact linear algebra of the split-signature space `V ⊕ V*`.

pub mod charts;
pub mod lagrangian;
pub mod matrix;
pub mod orthochart;
pub mod subspace;

use thiserror::Error;

pub use charts::{chart3, even2_chart, even2_from_chart, odd2_from_line, odd2_line, Chart3,
    EvenCircleCoord};
pub use lagrangian::{
    from_codelta_pi, from_delta_epsilon, graph_bivector, graph_two_form, is_lagrangian,
    to_codelta_pi, to_delta_epsilon, BivectorOnCosubspace, DiracType, Lagrangian,
    SkewFormOnSubspace,
};
pub use orthochart::{
    lagrangian_from_orthogonal, orthogonal_from_lagrangian, random_lagrangian, random_orthogonal,
    OrthoMatrix,
};
pub use subspace::{annihilator, coannihilator, pairing, GVector, PairedSpace, Subspace};

/// Parity of a Lagrangian or of an almost Dirac structure: the parity of
/// `dim(L ∩ V*)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ambient dimension must be a positive even number, got {got}")]
    OddAmbient { got: usize },
    #[error("subspace is not contained in the V factor")]
    NotInV,
    #[error("subspace is not contained in the V* factor")]
    NotInVStar,
    #[error("subspace is not Lagrangian")]
    NotLagrangian,
    #[error("matrix is not skew-symmetric or has the wrong size")]
    NotSkew,
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("operation requires ambient dimension {required}, got {got}")]
    WrongAmbient { required: usize, got: usize },
    #[error("operation requires a Lagrangian of parity {expected}")]
    WrongParity { expected: Parity },
    #[error("projective coordinates must not both vanish")]
    ZeroProjective,
    #[error("expected a 1-dimensional subspace")]
    NotALine,
}
