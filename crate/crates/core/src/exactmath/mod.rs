//! Exact integer/rational arithmetic, Bernoulli and Eulerian numbers, and
//! arithmetic in number fields `Q[x]/(f(x))`.
//!
//! Nothing in here touches floating point.

mod bernoulli;
pub(crate) mod eulerian;
mod field;

pub use bernoulli::{bernoulli, BernoulliCache};
pub use eulerian::{eulerian, EulerianCache};
pub use field::{Modulus, NumberFieldElement};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigInt::from(acc)
}

/// `n!`
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn rational_from_int<T: Into<BigInt>>(value: T) -> Rational {
    Rational::from_integer(value.into())
}

/// Formats as `num/den`, including a `/1` for integers.
pub fn rational_to_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `num/den` or a bare integer. Signs are allowed on either part.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Domain(format!("malformed rational '{text}'"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Returns the integer value of `value`, or a consistency error naming `what`.
pub(crate) fn expect_integer(value: Rational, what: &str) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Consistency(format!("{what} evaluated to non-integer {value}")))
    }
}

pub(crate) fn pow_int(base: &BigInt, exp: u64) -> BigInt {
    num_traits::pow::pow(base.clone(), exp as usize)
}

/// `(-1)^k`
pub(crate) fn sign(k: u64) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}
