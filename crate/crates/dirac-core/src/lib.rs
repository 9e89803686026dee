//! Dirac structures on surfaces and threefolds, computationally.
//!
//! Three layers:
//!
//! * [`lindirac`] — exact rational linear algebra of the split-signature space
//!   `V ⊕ V*`: subspaces in canonical form, Lagrangians, types `(a, b)`, the
//!   `(Δ, ε)` / `(Δ̂, Π)` presentations, the orthogonal-group chart, and the
//!   chart atlases in dimensions 2 and 3.
//! * [`symcalc`] — exact symbolic Cartan calculus over polynomial and
//!   trigonometric-polynomial coefficient rings on `ℝⁿ` and `Tⁿ`: forms,
//!   vector fields, Lie and Courant brackets, and the foliated exterior
//!   derivative.
//! * [`diracfield`] — almost Dirac structures presented as symbolic frames:
//!   involutivity checking, pointwise type stratification, the surface
//!   classification (windings on the torus, line fields), and the threefold
//!   presymplectic / foliated-Poisson decomposition.

pub mod diracfield;
pub mod lindirac;
pub mod rat;
pub mod symcalc;

pub use rat::Rat;
