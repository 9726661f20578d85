//! Dyadic numbers `m · 2^e` with directed rounding to a mantissa width.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// An exact binary fraction. Normalized so the mantissa is odd (or zero
/// with exponent 0), which makes the derived equality value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn shift_floor(m: &BigInt, k: u64) -> BigInt {
    m.div_floor(&pow2(k))
}

fn shift_ceil(m: &BigInt, k: u64) -> BigInt {
    -(-m).div_floor(&pow2(k))
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(n.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Position of the leading bit plus one: `|self| < 2^magnitude()`.
    /// Zero has magnitude `i64::MIN`.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    /// Round to at most `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        let m = match dir {
            Round::Down => shift_floor(&self.mant, k),
            Round::Up => shift_ceil(&self.mant, k),
        };
        Dyadic::new(m, self.exp + k as i64)
    }

    pub fn add(&self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &rhs.mant << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn sub(&self, rhs: &Dyadic) -> Dyadic {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &rhs.mant, self.exp + rhs.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Quotient rounded in `dir` to `prec` bits. Panics on a zero divisor.
    pub fn div(&self, rhs: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // scale so the integer quotient carries at least prec + 2 bits
        let shift = (prec as i64 + 2 + rhs.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let num = &self.mant << shift as u64;
        let (q, r) = num.div_mod_floor(&rhs.mant);
        let q = if dir == Round::Up && !r.is_zero() {
            q + 1
        } else {
            q
        };
        Dyadic::new(q, self.exp - rhs.exp - shift).round(prec, dir)
    }

    /// Square root rounded in `dir`. Panics on negative input.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(self.signum() >= 0, "dyadic sqrt of negative");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // make the exponent even and the mantissa wide enough for prec + 2 root bits
        let want = 2 * (prec as i64 + 2);
        let mut shift = (want - self.mant.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let e = self.exp - shift;
        let mut r = m.sqrt();
        if dir == Round::Up && &r * &r != m {
            r += 1;
        }
        Dyadic::new(r, e / 2).round(prec, dir)
    }

    /// Directed rounding of a rational to `prec` bits.
    pub fn from_rational(q: &BigRational, prec: u32, dir: Round) -> Dyadic {
        if q.denom().is_one() {
            return Dyadic::new(q.numer().clone(), 0).round(prec, dir);
        }
        let n = Dyadic::new(q.numer().clone(), 0);
        let d = Dyadic::new(q.denom().clone(), 0);
        n.div(&d, prec, dir)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Option<Dyadic> {
        BigRational::from_float(x).map(|r| {
            // denominators of float rationals are powers of two
            let e = r.denom().trailing_zeros().unwrap_or(0) as i64;
            Dyadic::new(r.numer().clone(), -e)
        })
    }

    pub fn to_f64(&self) -> f64 {
        super::q5::rat_to_f64(&self.to_rational())
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum().cmp(&0)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·2^{} (~{:e})", self.mant, self.exp, self.to_f64())
    }
}
