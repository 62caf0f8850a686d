//! Exact arithmetic kernel: rationals, univariate polynomials, truncated power
//! series and the linear algebra everything else is built on.

mod jet;
mod jet_matrix;
mod linalg;
mod poly;

pub use jet::Jet;
pub use jet_matrix::JetMatrix;
pub use linalg::{kernel_basis, kernel_basis_cols, linear_solve, rank, rref, QMatrix};
pub use poly::UniPoly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("reduction exhausted the available t-adic precision")]
    Indeterminate,
    #[error("right-hand side is outside the column span")]
    NoSolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad())?;
    let q: BigInt = den.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Integers print without a denominator, everything else as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer value of `r`, if it is an integer that fits in an `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if is_integer(r) {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(r: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    r.floor().to_integer().to_i64().expect("floor out of range")
}

/// `r^e` for a possibly negative exponent; panics on `0^negative`.
pub fn pow_i(r: &Rational, e: i64) -> Rational {
    let mut base = if e < 0 { r.recip() } else { r.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = Rational::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
