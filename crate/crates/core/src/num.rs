//! Exact-number helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serializer;

pub type Rational = BigRational;

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `num / den` reduced. Panics on a zero denominator.
pub fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn pow2(exp: u32) -> BigInt {
    BigInt::one() << exp
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Fixed-point rendering with `places` digits after the point, ties to even.
pub fn decimal(q: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = q * Rational::from_integer(scale.clone());
    let (floor, rem) = scaled.numer().div_mod_floor(scaled.denom());
    let twice = &rem * 2;
    let den = scaled.denom();
    let rounded = if twice > *den || (twice == *den && floor.is_odd()) {
        floor + 1
    } else {
        floor
    };

    let negative = rounded.is_negative();
    let digits = rounded.abs().to_string();
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = places + 1);
        let (whole, frac) = padded.split_at(padded.len() - places);
        format!("{whole}.{frac}")
    };
    if negative && !rounded.is_zero() {
        format!("-{body}")
    } else {
        body
    }
}

/// Serializes a rational as `{"num": "..", "den": ".."}`.
pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", &q.numer().to_string())?;
    st.serialize_field("den", &q.denom().to_string())?;
    st.end()
}

pub fn ser_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser_rational(q, s),
        None => s.serialize_none(),
    }
}

/// Serializes an integer as a decimal string.
pub fn ser_int<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}
