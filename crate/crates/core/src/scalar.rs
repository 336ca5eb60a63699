//! Exact scalar fields the algebra is generic over.
//!
//! Everything in this crate is exact. The [`Scalar`] trait is implemented for
//! arbitrary-precision rationals ([`BigRational`]) and for fixed-width ratios
//! (`Ratio<i64>`, `Ratio<i128>`), which are faster but overflow on large
//! coefficients. Floating point types deliberately do not implement it.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field of characteristic zero containing the rationals.
pub trait Scalar: Clone + Debug + Display + Ord + Signed + Send + Sync + 'static {
    fn from_int(n: i64) -> Self;

    /// `n / d`; panics when `d == 0`.
    fn from_frac(n: i64, d: i64) -> Self;

    fn to_rational(&self) -> BigRational;

    /// `None` when the value does not fit the representation.
    fn from_rational(q: &BigRational) -> Option<Self>;

    /// The value as an `i64` when it is an integer that fits.
    fn as_i64(&self) -> Option<i64> {
        let q = self.to_rational();
        if q.is_integer() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_frac(n: i64, d: i64) -> Self {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

macro_rules! impl_fixed_ratio {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_int(n: i64) -> Self {
                Ratio::from_integer(n as $int)
            }

            fn from_frac(n: i64, d: i64) -> Self {
                Ratio::new(n as $int, d as $int)
            }

            fn to_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn from_rational(q: &BigRational) -> Option<Self> {
                let n = q.numer().to_string().parse::<$int>().ok()?;
                let d = q.denom().to_string().parse::<$int>().ok()?;
                Some(Ratio::new(n, d))
            }
        }
    };
}

impl_fixed_ratio!(i64);
impl_fixed_ratio!(i128);

/// Error returned by [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {input:?}: expected an integer or p/q")]
pub struct ParseRationalError {
    pub input: String,
}

/// Parses `"p"` or `"p/q"` (optional leading `-`, decimal digits only).
pub fn parse_rational(text: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError {
        input: text.to_string(),
    };
    let s = text.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !den.map_or(true, digits) {
        return Err(err());
    }
    let mut n: BigInt = num.parse().map_err(|_| err())?;
    if neg {
        n = -n;
    }
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| err())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(n, d))
}

/// Always `"num/den"`, even for integers.
pub fn rational_to_fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), BigRational::from_int(3));
        assert_eq!(parse_rational("-1/2").unwrap(), BigRational::from_frac(-1, 2));
        assert_eq!(parse_rational("4/6").unwrap(), BigRational::from_frac(2, 3));
    }

    #[test]
    fn parse_rejects_floats_and_zero_denominators() {
        for bad in ["0.5", "1/0", "", "-", "1/-2", "1e3", "+1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let q = BigRational::from_frac(6, -4);
        assert_eq!(rational_to_fraction_string(&q), "-3/2");
        assert_eq!(rational_to_fraction_string(&BigRational::from_int(5)), "5/1");
    }

    #[test]
    fn fixed_width_round_trip() {
        let q = BigRational::from_frac(-7, 3);
        let r = Ratio::<i64>::from_rational(&q).unwrap();
        assert_eq!(r.to_rational(), q);
        assert_eq!(Ratio::<i64>::from_int(4).as_i64(), Some(4));
        assert_eq!(Ratio::<i64>::from_frac(1, 2).as_i64(), None);
    }
}
