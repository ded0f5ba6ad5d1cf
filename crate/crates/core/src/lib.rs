//! Exact computation of F-pure thresholds over prime fields.
//!
//! The crate is organized bottom-up:
//!
//! * [`ffpoly`]: `F_p` arithmetic, sparse polynomials, bracket reduction, parsing.
//! * [`frobenius`]: the ν-function of an ideal pair via Fedder's criterion.
//! * [`lp`]: an exact-rational simplex solver with optimality certificates.
//! * [`monomial`]: Newton polytopes, thresholds, integral closure and
//!   multiplicity of monomial ideals.
//! * [`estimator`]: rigorous threshold intervals and conjectured limits.
//! * [`harness`]: reproducible verification suites and random ideals.

pub mod ffpoly;
pub mod frobenius;
pub mod lp;
pub mod monomial;
pub mod estimator;
pub mod harness;
mod par;

pub use num_rational::BigRational as Rational;
pub use par::ExecMode;
