//! Exact scalars: ℚ(i), polynomials over it, and the rational function field ℚ(i)(t).

mod expr;
mod gaussian;
mod poly;
mod ratfun;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use expr::{parse_expr, Env, Expr, LinearValue, ParseError, TMode};
pub use gaussian::GaussianRational;
pub use poly::Poly;
pub use ratfun::{RatFun, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at t = 0")]
    PoleAtZero,
    #[error("evaluation at a pole")]
    EvalAtPole,
}

/// Implements the by-value operator forms in terms of the by-reference ones.
macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use forward_owned_ops;

/// The operations the linear algebra layer needs from a scalar field.
pub trait Field:
    Clone + PartialEq + Debug + Display + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, NumError>;
    fn from_gaussian(g: GaussianRational) -> Self;
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn inv(&self) -> Result<Self, NumError> {
        GaussianRational::inv(self)
    }
    fn from_gaussian(g: GaussianRational) -> Self {
        g
    }
}

impl Field for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn inv(&self) -> Result<Self, NumError> {
        RatFun::inv(self)
    }
    fn from_gaussian(g: GaussianRational) -> Self {
        RatFun::constant(g)
    }
}

/// Parses a constant scalar such as `-1/2`, `3+2*i` or `(1-i)/2`.
pub fn parse_gaussian(text: &str) -> Result<GaussianRational, ParseError> {
    let e = parse_expr(text)?;
    let v = e.eval_scalar(&Env::default()).map_err(|m| ParseError { col: 1, msg: m })?;
    v.as_constant().ok_or_else(|| ParseError { col: 1, msg: "expected a constant".into() })
}
