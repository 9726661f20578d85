//! Decimal rendering of exact values with a chosen rounding direction, and
//! exact parsing of decimal literals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{rat_to_f64, Dyadic};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecimalRounding {
    Nearest,
    /// Toward −∞.
    Down,
    /// Toward +∞.
    Up,
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// `10^e` as a rational, any sign of `e`.
fn pow10_rat(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u32))
    } else {
        BigRational::new(BigInt::one(), pow10((-e) as u32))
    }
}

/// Round `x` to an integer in the given direction (ties away from zero
/// for `Nearest`).
fn round_int(x: &BigRational, mode: DecimalRounding) -> BigInt {
    match mode {
        DecimalRounding::Down => x.floor().to_integer(),
        DecimalRounding::Up => x.ceil().to_integer(),
        DecimalRounding::Nearest => x.round().to_integer(),
    }
}

/// At most `sig` significant digits; trailing zeros dropped. Positional
/// notation for moderate magnitudes, `d.ddde±x` otherwise.
pub fn format_rational(x: &BigRational, sig: usize, mode: DecimalRounding) -> String {
    assert!(sig >= 1);
    if x.is_zero() {
        return "0".to_owned();
    }
    // decimal exponent of the leading digit: 10^e10 ≤ |x| < 10^(e10+1)
    let approx = rat_to_f64(&x.abs()).log10().floor();
    let mut e10 = if approx.is_finite() { approx as i64 } else { 0 };
    let ax = x.abs();
    while pow10_rat(e10) > ax {
        e10 -= 1;
    }
    while pow10_rat(e10 + 1) <= ax {
        e10 += 1;
    }
    let mut scale = e10 - sig as i64 + 1;
    let mut m = round_int(&(x / pow10_rat(scale)), mode);
    if m.abs() >= pow10(sig as u32) {
        // rounding carried into a new digit
        scale += 1;
        m = round_int(&(x / pow10_rat(scale)), mode);
        e10 += 1;
    }
    if m.is_zero() {
        return "0".to_owned();
    }
    let ten = BigInt::from(10);
    while m.is_multiple_of(&ten) {
        m /= &ten;
        scale += 1;
    }
    let negative = m.is_negative();
    let digits = m.abs().to_string();
    let body = if (-7..21).contains(&e10) {
        positional(&digits, scale)
    } else {
        let (head, tail) = digits.split_at(1);
        let mant = if tail.is_empty() {
            head.to_owned()
        } else {
            format!("{head}.{tail}")
        };
        format!("{mant}e{}", scale + digits.len() as i64 - 1)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn positional(digits: &str, scale: i64) -> String {
    if scale >= 0 {
        let mut s = digits.to_owned();
        s.extend(std::iter::repeat('0').take(scale as usize));
        return s;
    }
    let frac = (-scale) as usize;
    if digits.len() > frac {
        let (i, f) = digits.split_at(digits.len() - frac);
        format!("{i}.{f}")
    } else {
        format!("0.{}{}", "0".repeat(frac - digits.len()), digits)
    }
}

pub fn format_dyadic(x: &Dyadic, sig: usize, mode: DecimalRounding) -> String {
    format_rational(&x.to_rational(), sig, mode)
}

/// Exact value of a decimal literal such as `-0.125`, `3`, `1e-30` or
/// `2.5E+3`.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    if exp.unsigned_abs() > 100_000 {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let value = BigRational::from_integer(digits) * pow10_rat(exp - frac.len() as i64);
    Some(if negative { -value } else { value })
}
