//! Laplace contour-integral solutions of linear-coefficient ODEs.
//!
//! The crate builds solutions of `Σ (a_m + b_m x) y^(m)(x) = 0` as contour
//! integrals `∫ e^{xz} R(z) dz`, and carries the construction through for the
//! hydrogen radial equation: bound states from residues and Laguerre closed
//! forms, continuum states from a closed contour around a finite branch cut.
//!
//! Module map:
//!
//! - [`complex_core`]: branch-cut conventions, multivalued powers, paths and
//!   phase continuation.
//! - [`quadrature`]: adaptive Gauss–Kronrod integration of complex integrands.
//! - [`contour`]: quadrature of `e^{xz} Π (z − c_j)^{β_j}` along a [`Path`].
//! - [`gamma`]: Γ on the complex plane and the Hankel-contour check of `1/Γ`.
//! - [`laplace`]: ODE → `P`, `Q`, roots and exponents; contour catalog,
//!   endpoint condition, evaluation and classification.
//! - [`asymptotics`]: large-`r` asymptotic series and optimal truncation.
//! - [`hydrogen`]: the radial problem end to end.
//!
//! [`Path`]: complex_core::Path

// tabulated constants keep every digit they were published with; `!(x > 0.0)`
// guards reject NaN on purpose
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod complex_core;
pub mod contour;
pub mod error;
pub mod gamma;
pub mod hydrogen;
pub mod laplace;
pub mod quadrature;

pub use error::{Error, Result};
pub use num_complex::Complex64;
