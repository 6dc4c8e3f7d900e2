//! Exact rational scalars.

use alloc::format;
use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"p"`, `"p/q"` or `"-p/q"` with optional surrounding whitespace.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num = BigInt::from_str(num.trim())
            .map_err(|_| Error::Parse(format!("bad numerator in {t:?}")))?;
        let den = BigInt::from_str(den.trim())
            .map_err(|_| Error::Parse(format!("bad denominator in {t:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        Ok(Rational::new(num, den))
    } else {
        let num = BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad rational {t:?}")))?;
        Ok(Rational::from_integer(num))
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// `value^exp` for small exponents.
pub fn pow(value: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= value;
    }
    acc
}
