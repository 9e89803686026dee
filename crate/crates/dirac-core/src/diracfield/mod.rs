//! Almost Dirac structures on `ℝⁿ` and `Tⁿ` as symbolic frames:
//! involutivity, stratification, surface classification, and the threefold
//! decomposition.

pub mod frame;
pub mod numeric;
pub mod poisson;
pub mod random;
pub mod stratify;
pub mod surface;
pub mod threefold;

use thiserror::Error;

use crate::lindirac::Parity;
use crate::symcalc::{CalcError, DomainKind};

pub use frame::{
    courant_tensor, even_surface_frame, graph_frame_bivector, graph_frame_two_form, is_dirac,
    odd_surface_frame, CourantWitness, DiracFrame, DiracVerdict,
};
pub use numeric::{GridCoord, GridSpec};
pub use poisson::{
    admissible_generators, foliated_poisson_bracket, jacobi_on_generators, poisson_catalog,
    Bivector,
};
pub use random::random_dirac_field;
pub use stratify::{stratify, PointFlag, PointType, TypeStratification};
pub use surface::{classify_surface_even, classify_surface_even_with_start, line_field_of_odd,
    SurfaceClass};
pub use threefold::{
    decompose_threefold, FoliatedSideData, FoliatedSideReport, GraphSideData, GraphSideReport,
    RationalScalar, RationalSkewMatrix, ThreefoldDecomposition,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FrameError {
    #[error(transparent)]
    Calc(#[from] CalcError),
    #[error("a frame on an n-dimensional domain needs n sections, expected {expected}, got {got}")]
    WrongSectionCount { expected: usize, got: usize },
    #[error("sections {i} and {j} are not isotropic: ⟨e{i}, e{j}⟩ = {witness}")]
    NotIsotropic { i: usize, j: usize, witness: String },
    #[error("section {section} is not projectively periodic along axis {axis}")]
    TorusPeriodicity { section: usize, axis: usize },
    #[error("frame rank drops or is ambiguous at sample point {point:?}")]
    RankDrop { point: Vec<f64> },
    #[error("samples of one frame disagree in parity")]
    MixedParity,
    #[error("no unambiguous sample point to classify")]
    NoCleanSamples,
    #[error("operation requires a frame of parity {expected}")]
    WrongParity { expected: Parity },
    #[error("operation requires a {expected} domain")]
    WrongDomain { expected: &'static str },
    #[error("operation requires dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("frame is not Dirac: {witness}")]
    NotDirac { witness: String },
    #[error("winding lift did not stabilize within the sample budget")]
    WindingUnresolved,
    #[error("lifted angle increment is not an integer multiple of π (got {value})")]
    WindingNotInteger { value: f64 },
    #[error("the tangent projection admits no global spanning field in the ring")]
    NoGlobalLineField,
    #[error("function is not admissible for the foliation: {what}")]
    NotAdmissible { what: String },
    #[error("degenerate extraction: {what}")]
    DegenerateExtraction { what: &'static str },
    #[error("no random frame construction for n={n}, parity {parity}, {kind:?}")]
    UnsupportedCombination {
        n: usize,
        parity: Parity,
        kind: DomainKind,
    },
    #[error("grid needs at least {minimum} points per axis, got {got}")]
    GridTooSmall { got: usize, minimum: usize },
    #[error("grid range is empty")]
    EmptyRange,
}
