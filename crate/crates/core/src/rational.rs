//! Exact rational helpers shared by the model, the LP layer and the I/O code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `7`, `-3`, `2/5` or a plain decimal such as `0.125`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let den = num_traits::pow(BigInt::from(10u32), frac.len());
    let value = Rational::new(num, den);
    Some(if negative { -value } else { value })
}

/// Lossless rendering: integers as `n`, everything else as `p/q` in lowest terms.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering rounded half-up to `significant` significant digits,
/// trailing zeros removed.
pub fn to_decimal(value: &Rational, significant: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let significant = significant.max(1);
    let negative = value.is_negative();
    let magnitude = value.abs();
    let ten = BigInt::from(10u32);

    // exponent e with 10^e <= |value| < 10^(e+1)
    let mut exponent: i64 = magnitude.numer().to_string().len() as i64
        - magnitude.denom().to_string().len() as i64;
    let pow10 = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    while magnitude < pow10(exponent) {
        exponent -= 1;
    }
    while magnitude >= pow10(exponent + 1) {
        exponent += 1;
    }
    let shift = significant as i64 - 1 - exponent;
    let scaled = &magnitude * pow10(shift);
    let half = ratio(1, 2);
    let mut digits = (scaled + half).floor().to_integer();
    let mut shift = shift;
    if digits.to_string().len() > significant {
        digits /= &ten;
        shift -= 1;
    }
    let mut text = digits.to_string();
    if shift > 0 {
        let shift = shift as usize;
        if text.len() <= shift {
            text = format!("{}{}", "0".repeat(shift - text.len() + 1), text);
        }
        let split = text.len() - shift;
        let (whole, frac) = text.split_at(split);
        let frac = frac.trim_end_matches('0');
        text = if frac.is_empty() { whole.to_string() } else { format!("{whole}.{frac}") };
    } else {
        text.push_str(&"0".repeat((-shift) as usize));
    }
    if negative {
        text.insert(0, '-');
    }
    text
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite float.
pub fn from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Numerator of `value` over the given common denominator.
pub fn scaled_numerator(value: &Rational, denominator: &BigInt) -> BigInt {
    value.numer() * (denominator / value.denom())
}
