//! Bivariate rational functions over F_q and the exceptional /
//! primarily-exceptional classification.

pub mod bivariate;
pub mod factor;
pub mod parse;
pub mod poly;

pub use bivariate::{
    exceptional_witness, has_y_power_exceptional_specialization, in_delta, in_delta_strict, is_exceptional,
    is_exceptional_up_to_y_power, is_primarily_exceptional, make_primarily_exceptional_example, BiPoly,
    BivariateRationalFunction, Evaluation, ExceptionalWitness, Specialization,
};
pub use factor::{factor_rational, factor_univariate, is_irreducible, multiplicity_gcd, Multiplicities};
pub use parse::parse;
pub use poly::{Poly, UnivariateRationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("nested division at {pos}: only one top-level '/' is allowed")]
    NestedDivision { pos: usize },
    #[error("exponent too large at {pos}")]
    ExponentOverflow { pos: usize },
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("specialization has an identically zero denominator")]
    Degenerate,
    #[error("function has a zero numerator")]
    ZeroNumerator,
    #[error("power {d} must exceed 1 and divide q - 1 for q = {q}")]
    InvalidPower { d: u64, q: u64 },
    #[error("constant must be nonzero")]
    ZeroConstant,
}
