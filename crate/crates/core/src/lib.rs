//! Determining equations for higher-order product formulas of exponential
//! operators.
//!
//! A product `e^{t1 A} e^{t2 B} e^{t3 A} ...` approximates `e^{x(A+B)}` to
//! order `m` exactly when a family of polynomial equations in the stage
//! parameters `p_1..p_r` holds. This crate enumerates and counts those
//! equations, selects the independent ones through Lyndon words over the
//! correction operators `R_1, R_2, ...`, builds their exact rational
//! polynomials, solves them numerically, and checks candidate compositions
//! both symbolically (truncated free-algebra expansion) and numerically
//! (matrix order fit).
//!
//! Module map:
//!
//! * [`lyndon`]: Lyndon words, standard factorization, bracketing, expansion.
//! * [`witt`]: Möbius function, Witt dimension formulas, `S_min` and the
//!   dimension identities used as cross-checks.
//! * [`conditions`]: decomposition schemes, condition multisets, minimal
//!   index lists.
//! * [`coeffs`]: exact coefficient polynomials, their brute-force oracle,
//!   simplified forms and coset reductions.
//! * [`solver`]: determining systems, damped Newton, ladders, exact and
//!   numeric order verification.
//! * [`cli`]: the command-line front end used by the `splitgen` binary.

pub mod cli;
pub mod coeffs;
pub mod conditions;
mod error;
pub mod lyndon;
pub mod solver;
pub mod witt;

pub use error::{Error, Result};

/// Exact rational scalar used for every coefficient polynomial.
pub type Rational = num_rational::BigRational;
