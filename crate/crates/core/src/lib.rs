//! Bound states of one-dimensional quantum problems built from collections
//! of Dirac-delta wells.
//!
//! The solver works in momentum space: each bound state is a superposition
//! of Lorentzians 1/(k^2 + b^2), equivalently a superposition of two-sided
//! exponentials e^{-b|x - x_j|} in position space. Matching the
//! superposition at the well positions turns the eigenproblem into a small
//! characteristic system whose determinant vanishes exactly at the allowed
//! decay rates — no derivative jump conditions anywhere.
//!
//! Modules:
//! - [`model`]: potentials, unit reduction, bound-state records, JSON input.
//! - [`analytic`]: closed forms for one well and the two-well quantization
//!   condition.
//! - [`ndelta`]: the general N-well characteristic-determinant scan.
//! - [`momentum`]: momentum-space profiles, Fourier cross-checks, Parseval.
//! - [`oracle`]: independent finite-difference eigensolver for verification.
//! - [`periodic`]: negative-energy band of an infinite lattice of wells.
//! - [`numerics`]: bisection and adaptive Gauss-Kronrod quadrature.

pub mod analytic;
pub mod model;
pub mod momentum;
pub mod ndelta;
pub mod numerics;
pub mod oracle;
pub mod periodic;

pub use model::{BoundState, DeltaPotential, Parity, PhysicalSpec, PotentialInput, Well};
