//! Operator-asymmetry norms and the uncertainty relations they bound.
//!
//! The crate measures how incompatible two Hermitian observables are by the
//! minimal Schatten-p distance from one to the commutant algebra of the
//! other, then uses that quantity to evaluate a family of uncertainty
//! relations (a variance form for pure states, a skew-information form for
//! mixed states) and a quantum speed limit for nearly conserved quantities.
//!
//! Module map:
//! - [`matrix`]: dense complex matrices, observables, density matrices,
//!   pure states, commutators, matrix square roots.
//! - [`eig`]: complex Hermitian eigendecomposition (cyclic Jacobi).
//! - [`norms`]: singular values and Schatten p-norms.
//! - [`commutant`]: spectral blocks, pinching, asymmetry norms, and the
//!   brute-force oracle.
//! - [`relations`]: both sides of every supported uncertainty relation,
//!   reported with slack and refinement factors.
//! - [`dynamics`]: unitary evolution, observable velocities, and the two
//!   quantum speed limits.
//! - [`harness`]: seeded random ensembles, large property sweeps, and the
//!   two built-in reference scenarios.
//!
//! Units are dimensionless with ħ = 1.

pub mod commutant;
pub mod dynamics;
pub mod eig;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod norms;
pub mod relations;

pub use error::{Error, Result};
