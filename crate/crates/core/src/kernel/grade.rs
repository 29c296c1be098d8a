//! Exact truth degrees.
//!
//! A [`Grade`] is a rational number in the closed unit interval. All
//! comparisons and combination operators work on exact rationals; no
//! floating point is involved anywhere in the library. Decimal literals
//! such as `0.3` denote `3/10` exactly.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

/// An exact rational truth degree in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(BigRational);

/// Failure to build a [`Grade`] from a number or a string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    /// The value lies outside `[0, 1]`.
    #[error("grade {0} is outside [0, 1]")]
    OutOfRange(String),
    /// The text is not a decimal or rational literal.
    #[error("malformed grade literal {0:?}")]
    Malformed(String),
}

impl Grade {
    /// The bottom degree, `0`. A literal mapped to `0` counts as undefined.
    pub fn zero() -> Grade {
        Grade(BigRational::zero())
    }

    /// The top degree, `1`.
    pub fn one() -> Grade {
        Grade(BigRational::one())
    }

    /// Wraps an exact rational, rejecting values outside the unit interval.
    pub fn new(value: BigRational) -> Result<Grade, GradeError> {
        if value < BigRational::zero() || value > BigRational::one() {
            return Err(GradeError::OutOfRange(value.to_string()));
        }
        Ok(Grade(value))
    }

    /// Builds `numer/denom`. Convenient in tests and small fixtures.
    pub fn ratio(numer: u64, denom: u64) -> Result<Grade, GradeError> {
        if denom == 0 {
            return Err(GradeError::Malformed(format!("{numer}/0")));
        }
        Grade::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// The underlying reduced rational.
    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Product conjunction.
    pub fn prod(&self, other: &Grade) -> Grade {
        Grade(&self.0 * &other.0)
    }

    /// Bounded (Łukasiewicz) sum: `min(1, a + b)`.
    pub fn bsum(&self, other: &Grade) -> Grade {
        let sum = &self.0 + &other.0;
        if sum > BigRational::one() {
            Grade::one()
        } else {
            Grade(sum)
        }
    }

    /// Standard complement `1 - a`.
    pub fn compl(&self) -> Grade {
        Grade(BigRational::one() - &self.0)
    }
}

impl fmt::Display for Grade {
    /// Canonical rendering: a finite decimal without trailing zeros when the
    /// reduced denominator divides a power of ten (`3/10` prints as `0.3`),
    /// otherwise `numer/denom`. Parsing the canonical form gives back the
    /// identical grade.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numer = self.0.numer();
        let denom = self.0.denom();
        if denom.is_one() {
            return write!(f, "{numer}");
        }
        if let Some(exp) = pow_ten_exponent(denom) {
            let scale = BigInt::from(10u8).pow(exp);
            let scaled = numer * &scale / denom;
            let digits = format!("{:0>width$}", scaled.to_string(), width = exp as usize);
            let digits = digits.trim_end_matches('0');
            return write!(f, "0.{digits}");
        }
        write!(f, "{numer}/{denom}")
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grade({self})")
    }
}

impl FromStr for Grade {
    type Err = GradeError;

    /// Accepts decimal literals with a leading digit (`0.3`, `1`, `0.25`)
    /// and exact fractions (`1/3`).
    fn from_str(text: &str) -> Result<Grade, GradeError> {
        let malformed = || GradeError::Malformed(text.to_string());
        if let Some((numer, denom)) = text.split_once('/') {
            let numer: BigInt = numer.parse().map_err(|_| malformed())?;
            let denom: BigInt = denom.parse().map_err(|_| malformed())?;
            if denom.is_zero() {
                return Err(malformed());
            }
            return Grade::new(BigRational::new(numer, denom));
        }
        match text.split_once('.') {
            None => {
                let whole: BigInt = text.parse().map_err(|_| malformed())?;
                Grade::new(BigRational::from_integer(whole))
            }
            Some((whole, frac)) => {
                if whole.is_empty()
                    || frac.is_empty()
                    || !whole.bytes().all(|b| b.is_ascii_digit())
                    || !frac.bytes().all(|b| b.is_ascii_digit())
                {
                    return Err(malformed());
                }
                let scale = BigInt::from(10u8).pow(frac.len() as u32);
                let whole: BigInt = whole.parse().map_err(|_| malformed())?;
                let frac: BigInt = frac.parse().map_err(|_| malformed())?;
                Grade::new(BigRational::new(whole * &scale + frac, scale))
            }
        }
    }
}

/// If `n = 2^a * 5^b`, returns the smallest `k` with `n | 10^k`.
fn pow_ten_exponent(n: &BigInt) -> Option<u32> {
    let mut n = n.clone();
    let two = BigInt::from(2u8);
    let five = BigInt::from(5u8);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&n % &two).is_zero() {
        n /= &two;
        twos += 1;
    }
    while (&n % &five).is_zero() {
        n /= &five;
        fives += 1;
    }
    n.is_one().then_some(twos.max(fives))
}
