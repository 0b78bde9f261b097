//! Heckman-Opdam hypergeometric functions and hyperbolic Calogero-Sutherland wave functions.
//!
//! Four representations of the wave function Ψ_λ(x) are provided (Euler integral,
//! Mellin-Barnes integral, Harish-Chandra series and the asymptotic form), together with the
//! differential, difference and Baxter operators they diagonalize and a set of identity checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod special_fn;
pub mod quadrature;
pub mod double_sine;
pub mod wavefunctions;
pub mod operators;
pub mod verification;
pub mod suites;
pub mod cli;

pub use error::{Error, Result};
pub use num_complex::Complex64;
