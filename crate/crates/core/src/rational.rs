//! Exact rationals and the small toolbox of dyadic helpers built on them.
//!
//! Text format: `p/q` or `p`, no whitespace, lowest terms, positive
//! denominator. Parsing accepts non-canonical input (`4/6`, `-0`) and
//! normalizes it; printing is always canonical.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << e as usize)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Largest multiple of `2^-bits` not above `q`.
pub fn round_down(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = floor(&(q * Rational::from_integer(scale.clone())));
    Rational::new(scaled, scale)
}

/// Smallest multiple of `2^-bits` not below `q`.
pub fn round_up(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    let scaled = ceil(&(q * Rational::from_integer(scale.clone())));
    Rational::new(scaled, scale)
}

/// Dyadic bounds `lo <= sqrt(q) <= hi` with `hi - lo = 2^-bits`.
pub fn sqrt_bounds(q: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!q.is_negative(), "sqrt of negative rational");
    // floor(sqrt(floor(q * 4^bits))) / 2^bits
    let scaled = floor(&(q * pow2(2 * bits as i64)));
    let root = scaled.sqrt();
    let lo = Rational::new(root.clone(), BigInt::one() << bits as usize);
    let hi = Rational::new(root + 1, BigInt::one() << bits as usize);
    (lo, hi)
}

/// Smallest `e` with `2^e >= n` (0 for n <= 1).
pub fn ceil_log2(n: usize) -> u32 {
    if n <= 1 {
        0
    } else {
        usize::BITS - (n - 1).leading_zeros()
    }
}

/// Smallest `e` with `2^e >= q` for positive `q`; negative when `q < 1`.
pub fn ceil_log2_rational(q: &Rational) -> i64 {
    assert!(q.is_positive());
    let mut e: i64 = (q.numer().bits() as i64) - (q.denom().bits() as i64);
    while pow2(e) < *q {
        e += 1;
    }
    while pow2(e - 1) >= *q {
        e -= 1;
    }
    e
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::input(format!("malformed rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits_ok = |s: &str, signed: bool| {
        let body = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(num, true) {
        return Err(bad());
    }
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = match den {
        Some(d) if digits_ok(d, false) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::input(format!("zero denominator in `{text}`")));
    }
    Ok(Rational::new(numer, denom))
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn sign(q: &Rational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Maximum absolute value of a slice, zero when empty.
pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .map(|v| v.abs())
        .fold(Rational::zero(), |acc, v| if v > acc { v } else { acc })
}
