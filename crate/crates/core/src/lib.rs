//! Existence of primitive points on surfaces `z^r = f(x, y)` over finite
//! fields.
//!
//! The crate provides exact finite-field tables, multiplicative characters and
//! the characteristic functions of e-free and (R, r)-free elements, bivariate
//! rational functions with the (primarily) exceptional classification, the
//! sufficient-condition and sieve inequalities with the C_{d,r} estimation
//! chain, and exhaustive primitive-point searches.

pub mod arith;
pub mod bounds;
pub mod characters;
pub mod finite_field;
pub mod rational_functions;
pub mod search;

pub use arith::{BigReal, Factorization};
pub use finite_field::{FieldElement, FieldError, FieldOptions, FieldTable};
pub use rational_functions::{BivariateRationalFunction, RationalError};
