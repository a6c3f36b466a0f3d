//! Triadic embedding of [`BinSeq`] into the middle-thirds Cantor set.
//!
//! `embed(s) = Σ_{i≥0} 2·s_i / 3^{i+1}`, computed exactly in closed form over
//! arbitrary-precision rationals. [`unembed`] inverts it by digit extraction
//! with cycle detection on the remainder.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::binseq::BinSeq;
use crate::error::{Error, Result};

/// Exact point of the Cantor set, in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CantorPoint(BigRational);

impl CantorPoint {
    /// `None` unless `value` lies in the Cantor set.
    pub fn new(value: BigRational) -> Option<Self> {
        unembed(&value).map(|_| Self(value))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_value(self) -> BigRational {
        self.0
    }
}

impl fmt::Display for CantorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

/// Base-3 value of `word` with each digit doubled: `Σ 2·w_j·3^{len-1-j}`.
fn doubled_triadic(word: &[bool]) -> BigInt {
    word.iter().fold(BigInt::zero(), |acc, &b| {
        acc * 3u32 + if b { 2u32 } else { 0u32 }
    })
}

pub fn embed(s: &BinSeq) -> CantorPoint {
    let prefix_len = s.prefix().len();
    let period_len = s.period().len();
    let scale = BigInt::from(3u32).pow(prefix_len as u32);
    let head = BigRational::new(doubled_triadic(s.prefix()), scale.clone());
    let cycle = BigInt::from(3u32).pow(period_len as u32) - 1u32;
    let tail = BigRational::new(doubled_triadic(s.period()), cycle * scale);
    CantorPoint(head + tail)
}

/// The sequence whose embedding is `q`, if `q` is in the Cantor set.
///
/// Where `q` has two triadic expansions the one avoiding digit 1 is used,
/// so `1/3` gives `0(1)` and `2/3` gives `1(0)`.
pub fn unembed(q: &BigRational) -> Option<BinSeq> {
    let one = BigRational::one();
    if q.is_negative() || *q > one {
        return None;
    }
    let third = BigRational::new(BigInt::one(), BigInt::from(3u32));
    let two_thirds = &one - &third;
    let three = BigRational::from_integer(BigInt::from(3u32));
    let two = BigRational::from_integer(BigInt::from(2u32));

    let mut seen: HashMap<BigRational, usize> = HashMap::new();
    let mut bits = Vec::new();
    let mut r = q.clone();
    loop {
        if let Some(&start) = seen.get(&r) {
            let period = bits.split_off(start);
            return BinSeq::new(bits, period).ok();
        }
        seen.insert(r.clone(), bits.len());
        if r <= third {
            bits.push(false);
            r = &r * &three;
        } else if r >= two_thirds {
            bits.push(true);
            r = &r * &three - &two;
        } else {
            return None;
        }
    }
}

/// `1 − p`; the image of complementation.
pub fn mirror0(p: &CantorPoint) -> CantorPoint {
    CantorPoint(BigRational::one() - &p.0)
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::MalformedRational(s.to_string());
    let int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(t).map_err(|_| bad())
    };
    let t = s.trim();
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(int(t)?)),
        Some((p, q)) => {
            let den = int(q)?;
            if den.is_zero() || q.starts_with(['-', '+']) {
                return Err(bad());
            }
            Ok(BigRational::new(int(p)?, den))
        }
    }
}

/// Decimal rendering with `digits` places after the point, rounded half to
/// even from the exact value.
pub fn to_decimal(q: &BigRational, digits: usize) -> String {
    let scaled = q.abs() * BigRational::from_integer(BigInt::from(10u32).pow(digits as u32));
    let (mut whole, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u32;
    if twice > *scaled.denom() || (twice == *scaled.denom() && whole.is_odd()) {
        whole += 1u32;
    }
    let mut text = whole.to_string();
    if digits > 0 {
        if text.len() <= digits {
            text = "0".repeat(digits + 1 - text.len()) + &text;
        }
        text.insert(text.len() - digits, '.');
    }
    if q.is_negative() && whole.is_positive() {
        text.insert(0, '-');
    }
    text
}
