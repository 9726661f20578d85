//! Exact arithmetic in the quadratic field Q(√5).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

/// An element `a + b·√5` with rational `a` and `b`.
///
/// Both coefficients are kept in lowest terms by `BigRational`, and since √5
/// is irrational the pair `(a, b)` is unique for every value, so derived
/// equality and hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactQ5 {
    a: BigRational,
    b: BigRational,
}

impl ExactQ5 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        ExactQ5 { a, b }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        ExactQ5 {
            a: BigRational::from_integer(n.into()),
            b: BigRational::zero(),
        }
    }

    /// `num / den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        ExactQ5 {
            a: BigRational::new(num.into(), den.into()),
            b: BigRational::zero(),
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        ExactQ5 {
            a,
            b: BigRational::zero(),
        }
    }

    /// `(a_num/a_den) + (b_num/b_den)·√5`.
    pub fn from_parts(a_num: i64, a_den: i64, b_num: i64, b_den: i64) -> Self {
        ExactQ5 {
            a: BigRational::new(a_num.into(), a_den.into()),
            b: BigRational::new(b_num.into(), b_den.into()),
        }
    }

    pub fn sqrt5() -> Self {
        Self::from_parts(0, 1, 1, 1)
    }

    /// The golden ratio (1 + √5)/2.
    pub fn phi() -> Self {
        Self::from_parts(1, 2, 1, 2)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt5_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b√5`.
    pub fn conjugate(&self) -> Self {
        ExactQ5 {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a² − 5b²`, zero only for zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with 5b²
        let a2 = &self.a * &self.a;
        let b2 = BigRational::from_integer(5.into()) * &self.b * &self.b;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("√5 is irrational"),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(ExactQ5 {
            a: &self.a / &n,
            b: -(&self.b / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Square root inside the field, when one exists.
    ///
    /// Returns the nonnegative root, or `None` for negative values and for
    /// values whose square root lies outside Q(√5).
    pub fn sqrt_exact(&self) -> Option<Self> {
        match self.signum() {
            0 => return Some(Self::zero()),
            s if s < 0 => return None,
            _ => {}
        }
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Self::from_rational(r));
            }
            let over5 = &self.a / BigRational::from_integer(5.into());
            return rational_sqrt(&over5).map(|r| ExactQ5 {
                a: BigRational::zero(),
                b: r,
            });
        }
        // (x + y√5)² = a + b√5  ⇔  x² + 5y² = a, 2xy = b.
        // x² is a root of X² − aX + 5b²/4.
        let disc = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(2.into());
        for x2 in [(&self.a + &disc) / &two, (&self.a - &disc) / &two] {
            if x2.is_zero() {
                continue;
            }
            let Some(x) = rational_sqrt(&x2) else {
                continue;
            };
            let y = &self.b / (&two * &x);
            let root = ExactQ5 { a: x, b: y };
            let root = if root.signum() < 0 { -root } else { root };
            if &root.square() == self {
                return Some(root);
            }
        }
        None
    }

    /// Nearest `f64`, for diagnostics and heuristics only.
    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * 5f64.sqrt()
    }
}

pub(crate) fn rat_sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerators or denominators: scale through the bit lengths
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = n - d;
        let scaled = if shift > 0 {
            r / BigRational::from_integer(BigInt::one() << shift as usize)
        } else {
            r * BigRational::from_integer(BigInt::one() << (-shift) as usize)
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// Rational square root if `r` is the square of a rational.
pub(crate) fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl PartialOrd for ExactQ5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactQ5 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl fmt::Debug for ExactQ5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExactQ5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}·√5", self.b)
        } else {
            write!(f, "{} + {}·√5", self.a, self.b)
        }
    }
}

impl From<i64> for ExactQ5 {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for ExactQ5 {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a ExactQ5> for &'a ExactQ5 {
    type Output = ExactQ5;
    fn add(self, rhs: &ExactQ5) -> ExactQ5 {
        ExactQ5 {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a ExactQ5> for &'a ExactQ5 {
    type Output = ExactQ5;
    fn sub(self, rhs: &ExactQ5) -> ExactQ5 {
        ExactQ5 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a ExactQ5> for &'a ExactQ5 {
    type Output = ExactQ5;
    fn mul(self, rhs: &ExactQ5) -> ExactQ5 {
        let five = BigRational::from_integer(5.into());
        ExactQ5 {
            a: &self.a * &rhs.a + five * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

/// Panics on division by zero; use [`ExactQ5::checked_div`] for a `Result`.
impl<'a> Div<&'a ExactQ5> for &'a ExactQ5 {
    type Output = ExactQ5;
    fn div(self, rhs: &ExactQ5) -> ExactQ5 {
        self.checked_div(rhs).expect("ExactQ5 division by zero")
    }
}

impl Neg for &ExactQ5 {
    type Output = ExactQ5;
    fn neg(self) -> ExactQ5 {
        ExactQ5 {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for ExactQ5 {
    type Output = ExactQ5;
    fn neg(self) -> ExactQ5 {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ExactQ5> for ExactQ5 {
            type Output = ExactQ5;
            fn $m(self, rhs: ExactQ5) -> ExactQ5 { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a ExactQ5> for ExactQ5 {
            type Output = ExactQ5;
            fn $m(self, rhs: &ExactQ5) -> ExactQ5 { (&self).$m(rhs) }
        }
        impl<'a> $tr<ExactQ5> for &'a ExactQ5 {
            type Output = ExactQ5;
            fn $m(self, rhs: ExactQ5) -> ExactQ5 { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

/// The four field operations, as a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Apply one field operation exactly.
pub fn q5_arith(x: &ExactQ5, y: &ExactQ5, op: FieldOp) -> Result<ExactQ5, ScalarError> {
    Ok(match op {
        FieldOp::Add => x + y,
        FieldOp::Sub => x - y,
        FieldOp::Mul => x * y,
        FieldOp::Div => x.checked_div(y)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi() -> ExactQ5 {
        ExactQ5::phi()
    }

    #[test]
    fn golden_identities() {
        let p = phi();
        assert_eq!(&p * &p, ExactQ5::from_parts(3, 2, 1, 2));
        assert_eq!(&p * &p, &p + &ExactQ5::one());
        assert_eq!(
            q5_arith(&ExactQ5::one(), &p, FieldOp::Div).unwrap(),
            ExactQ5::from_parts(-1, 2, 1, 2)
        );
        let s5 = ExactQ5::sqrt5();
        assert_eq!(q5_arith(&s5, &s5, FieldOp::Mul).unwrap(), ExactQ5::from_int(5));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            q5_arith(&ExactQ5::one(), &ExactQ5::zero(), FieldOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn sign_of_mixed_coefficients() {
        // 2 − √5 < 0, 3 − √5 > 0, −2 + √5 > 0
        assert_eq!(ExactQ5::from_parts(2, 1, -1, 1).signum(), -1);
        assert_eq!(ExactQ5::from_parts(3, 1, -1, 1).signum(), 1);
        assert_eq!(ExactQ5::from_parts(-2, 1, 1, 1).signum(), 1);
        assert_eq!(ExactQ5::zero().signum(), 0);
        assert!(phi() > ExactQ5::ratio(8, 5));
        assert!(phi() < ExactQ5::ratio(13, 8));
    }

    #[test]
    fn sqrt_inside_the_field() {
        let p = phi();
        assert_eq!(p.square().sqrt_exact(), Some(p.clone()));
        assert_eq!(ExactQ5::from_int(5).sqrt_exact(), Some(ExactQ5::sqrt5()));
        assert_eq!(ExactQ5::ratio(9, 4).sqrt_exact(), Some(ExactQ5::ratio(3, 2)));
        assert_eq!(ExactQ5::from_int(2).sqrt_exact(), None);
        assert_eq!(ExactQ5::from_int(-4).sqrt_exact(), None);
        // (5 + √5)/8 = sin²72° has no root in the field
        assert_eq!(ExactQ5::from_parts(5, 8, 1, 8).sqrt_exact(), None);
        // (1 − φ)² = 1/φ²; the root returned is the positive one
        let r = (ExactQ5::one() - &p).square().sqrt_exact().unwrap();
        assert_eq!(r, &p - &ExactQ5::one());
    }
}
