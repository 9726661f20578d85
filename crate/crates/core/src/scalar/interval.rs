//! Closed intervals with dyadic endpoints and outward rounding.

use std::fmt;

use num_rational::BigRational;

use super::dyadic::{Dyadic, Round};
use super::q5::ExactQ5;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    /// Panics unless `lo <= hi`.
    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(d: Dyadic) -> Self {
        Interval {
            lo: d.clone(),
            hi: d,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    /// Exact midpoint (one extra bit past the endpoints).
    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    /// Largest absolute value of any member.
    pub fn mag(&self) -> Dyadic {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo.to_rational() <= x && x <= &self.hi.to_rational()
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Sign when the interval excludes zero.
    pub fn certain_sign(&self) -> Option<i32> {
        if self.lo.signum() > 0 {
            Some(1)
        } else if self.hi.signum() < 0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
        let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
        (lo <= hi).then(|| Interval::new(lo.clone(), hi.clone()))
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Interval {
        Interval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
        }
    }

    pub fn from_q5(x: &ExactQ5, prec: u32) -> Interval {
        // a few guard bits keep the combined width at about one ulp
        let guard = prec + 8;
        let a = Interval::from_rational(x.rational_part(), guard);
        if x.is_rational() {
            return a.round(prec);
        }
        let b = Interval::from_rational(x.sqrt5_part(), guard);
        let five = Dyadic::from_int(5);
        let s5 = Interval {
            lo: five.sqrt(guard, Round::Down),
            hi: five.sqrt(guard, Round::Up),
        };
        a.add(&b.mul(&s5, guard), guard).round(prec)
    }

    pub fn round(&self, prec: u32) -> Interval {
        Interval {
            lo: self.lo.round(prec, Round::Down),
            hi: self.hi.round(prec, Round::Up),
        }
    }

    pub fn add(&self, rhs: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.add(&rhs.lo).round(prec, Round::Down),
            hi: self.hi.add(&rhs.hi).round(prec, Round::Up),
        }
    }

    pub fn sub(&self, rhs: &Interval, prec: u32) -> Interval {
        Interval {
            lo: self.lo.sub(&rhs.hi).round(prec, Round::Down),
            hi: self.hi.sub(&rhs.lo).round(prec, Round::Up),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn mul(&self, rhs: &Interval, prec: u32) -> Interval {
        let products = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = products.iter().min().expect("nonempty");
        let hi = products.iter().max().expect("nonempty");
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
        }
    }

    /// Tighter than `mul(self, self)` when the interval straddles zero.
    pub fn square(&self, prec: u32) -> Interval {
        if self.contains_zero() {
            let m = self.mag();
            Interval {
                lo: Dyadic::zero(),
                hi: m.mul(&m).round(prec, Round::Up),
            }
        } else {
            self.mul(self, prec)
        }
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, rhs: &Interval, prec: u32) -> Option<Interval> {
        if rhs.contains_zero() {
            return None;
        }
        let corners = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let lo = corners
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Down))
            .min()
            .expect("nonempty");
        let hi = corners
            .iter()
            .map(|(a, b)| a.div(b, prec, Round::Up))
            .max()
            .expect("nonempty");
        Some(Interval { lo, hi })
    }

    /// Caller guarantees `lo >= 0`.
    pub fn sqrt(&self, prec: u32) -> Interval {
        Interval {
            lo: self.lo.sqrt(prec, Round::Down),
            hi: self.hi.sqrt(prec, Round::Up),
        }
    }

    pub(crate) fn clamp_nonnegative(&self) -> Interval {
        Interval {
            lo: if self.lo.signum() < 0 {
                Dyadic::zero()
            } else {
                self.lo.clone()
            },
            hi: self.hi.clone(),
        }
    }

    pub fn scale_pow2(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:e}, {:e}] (width ~{:e})",
            self.lo.to_f64(),
            self.hi.to_f64(),
            self.width().to_f64()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straddling_divisor_is_rejected() {
        let a = Interval::point(Dyadic::from_int(1));
        let b = Interval::new(Dyadic::from_int(-1), Dyadic::from_int(1));
        assert!(a.div(&b, 64).is_none());
    }

    #[test]
    fn mul_with_mixed_signs() {
        let a = Interval::new(Dyadic::from_int(-2), Dyadic::from_int(3));
        let b = Interval::new(Dyadic::from_int(-5), Dyadic::from_int(4));
        let p = a.mul(&b, 64);
        assert_eq!(p.lo(), &Dyadic::from_int(-15));
        assert_eq!(p.hi(), &Dyadic::from_int(12));
        assert_eq!(a.square(64).lo(), &Dyadic::zero());
        assert_eq!(a.square(64).hi(), &Dyadic::from_int(9));
    }

    #[test]
    fn q5_enclosure() {
        let phi = ExactQ5::phi();
        let iv = Interval::from_q5(&phi, 64);
        assert!(iv.lo().to_f64() <= 1.618033988749895 && 1.618033988749894 <= iv.hi().to_f64());
        assert!(iv.width() <= Dyadic::pow2(-60));
    }
}
