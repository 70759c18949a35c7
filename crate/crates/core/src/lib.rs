//! Computational L_p-Hodge theory.
//!
//! The crate has four mathematical layers and a reporting layer:
//!
//! * [`exterior`] — exact multilinear algebra over an orthonormal coframe:
//!   wedge, contraction, Hodge star, the nonlinear star `∗_p`, and exact
//!   extremization of diagonal quadratic forms over unit k-forms.
//! * [`roots`] — positive root systems of the simple types (plus the four
//!   restricted C_n profiles), maximal-root weight profiles, and every
//!   symmetric-space vanishing threshold as an exact rational.
//! * [`pinching`] — threshold arithmetic for pinched negative curvature and
//!   exact extremization over the Rauch eigenvalue box.
//! * [`model`] — rotationally symmetric model geometries with closed-form
//!   radial test forms, sphere/radial quadrature, monotonicity and Bochner
//!   residual checks.
//! * [`discrete`] — finite weighted cochain complexes with L_p norms and the
//!   convex solvers producing p-coclosed primitives and p-harmonic
//!   representatives.
//!
//! [`verify`] packages the invariant suites behind pass/fail reports; the
//! `lp-hodge` binary exposes everything on the command line.

pub mod config;
pub mod discrete;
pub mod error;
pub mod exterior;
pub mod model;
pub mod pinching;
pub mod rational;
pub mod report;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
