//! Exact symbolic engine for Lie conformal algebras, Lie pseudoalgebras in several
//! variables, and vertex Lie algebra data on the light cone.
//!
//! - [`exactalg`]: rational polynomials over named vector variables.
//! - [`pseudoalg`]: bracket tables over `ℚ[T_1..T_D]`, the standard families and axiom checks.
//! - [`opecalc1d`]: the one-variable dictionary between λ-brackets, j-th products and delta functions.
//! - [`conecalc`]: harmonic bases, light-cone mode series and ι-expansions.
//! - [`vla`]: axiom checkers for singular light-cone data.
//! - [`cli`]: file formats and the command-line front end.

pub mod cli;
pub mod conecalc;
pub mod error;
pub mod exactalg;
pub mod opecalc1d;
pub mod pseudoalg;
pub mod report;
pub mod vla;

pub use error::{Error, Result};
