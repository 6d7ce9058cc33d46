//! Exact arithmetic over ℚ(params): sparse polynomials, canonical rational
//! expressions, and dense matrices over any [`Field`].

mod expr;
mod gcd;
mod matrix;
mod parse;
mod poly;
mod space;

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

pub use expr::RationalExpr;
pub use gcd::gcd as polynomial_gcd;
pub use matrix::{dot, ExprMatrix, Matrix, RationalMatrix};
pub use parse::valid_identifier;
pub use poly::{Monomial, Polynomial};
pub use space::{Assignment, Point, Space, DEFAULT_TERM_LIMIT, MAX_PARAMS};

pub type Rational = num_rational::BigRational;
pub type Integer = num_bigint::BigInt;

/// `n/d` as a [`Rational`].
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("operands live in different parameter spaces")]
    ParameterMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expression too large: {terms} terms exceeds limit {limit}")]
    TermLimit { terms: usize, limit: usize },
    #[error("denominator vanishes at {point}")]
    DenominatorVanishes { point: String },
    #[error("parameter '{0}' has no value")]
    Unassigned(String),
    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),
    #[error("too many parameters ({0}); at most {MAX_PARAMS} supported")]
    TooManyParameters(usize),
    #[error("invalid parameter name '{0}'")]
    BadParameterName(String),
    #[error("exponent overflow")]
    DegreeOverflow,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the source string.
    pub offset: usize,
    pub message: String,
    pub unknown_parameter: Option<String>,
}

impl ParseError {
    pub fn new(offset: usize, message: String) -> Self {
        ParseError {
            offset,
            message,
            unknown_parameter: None,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)
    }
}

/// Exact field operations shared by the symbolic and the numeric pipeline.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, q: &Rational) -> Self;
    fn vanishes(&self) -> bool;
    fn try_add(&self, rhs: &Self) -> Result<Self, ArithError>;
    fn try_sub(&self, rhs: &Self) -> Result<Self, ArithError>;
    fn try_mul(&self, rhs: &Self) -> Result<Self, ArithError>;
    fn try_div(&self, rhs: &Self) -> Result<Self, ArithError>;
    fn neg(&self) -> Self;
    fn scale(&self, k: &Rational) -> Self;
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self + rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self - rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * rhs)
    }
    fn try_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        if Zero::is_zero(rhs) {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self / rhs)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, k: &Rational) -> Self {
        self * k
    }
}
