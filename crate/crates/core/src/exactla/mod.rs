//! Exact linear algebra over ℚ and over the rational-function field ℚ(ε).
//!
//! Everything here is dense and deterministic: pivoting always picks the
//! leftmost nonzero column and the first eligible row, so kernel bases and
//! particular solutions are reproducible bit for bit.

mod eps;
mod matrix;
mod poly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

pub use eps::EpsScalar;
pub use matrix::{ColumnCoordinates, Matrix, Rref};
pub use poly::Poly;

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num::BigRational;

/// Builds a rational from a small integer.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds `num / den`.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n` or `n/d`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num::BigInt = n.trim().parse().ok()?;
            let d: num::BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<num::BigInt>().ok().map(Rational::from_integer),
    }
}

/// A field element usable as a matrix entry.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn from_rational(q: &Rational) -> Self;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}
