//! Exact arithmetic: polynomials and rational functions in the dimension
//! symbol `d`, plus the combinatorial scalars the integration formulas use.

mod poly;
mod rational_function;
mod special;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use poly::PolyD;
pub use rational_function::{to_f64, RationalFunction};
pub use special::{binomial, coefficient_b, factorial, multinomial, pochhammer, rising, Affine};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("pole at d = {d}")]
    Pole { d: i64 },
    #[error("cannot parse rational function: {0}")]
    Parse(String),
}
