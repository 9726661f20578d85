//! Numeric kernel: exact Q(√5) arithmetic underneath, certified interval
//! evaluation with precision escalation on top.

mod dyadic;
mod interval;
mod q5;
mod real;

pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
pub use q5::{q5_arith, ExactQ5, FieldOp};
pub use real::Real;

use real::Fault;

pub(crate) use q5::rat_to_f64;

use thiserror::Error;

/// Lowest precision any evaluation accepts.
pub const MIN_PRECISION: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("square root of a negative quantity")]
    SqrtOfNegative,
    #[error("divisor interval contains zero")]
    DivisorStraddlesZero,
    #[error("precision {0} is below the minimum of {MIN_PRECISION} bits")]
    PrecisionTooLow(u32),
    #[error("invalid precision policy: start {start} bits, max {max} bits")]
    InvalidPolicy { start: u32, max: u32 },
}

/// Working-precision ladder: `start_bits`, doubling, capped at `max_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: 64,
            max_bits: 4096,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(start_bits: u32, max_bits: u32) -> Result<Self, EvalError> {
        let p = PrecisionPolicy {
            start_bits,
            max_bits,
        };
        p.ladder()?;
        Ok(p)
    }

    pub fn ladder(&self) -> Result<Vec<u32>, EvalError> {
        if self.start_bits < MIN_PRECISION {
            return Err(EvalError::PrecisionTooLow(self.start_bits));
        }
        if self.start_bits > self.max_bits {
            return Err(EvalError::InvalidPolicy {
                start: self.start_bits,
                max: self.max_bits,
            });
        }
        let mut out = vec![self.start_bits];
        let mut p = self.start_bits;
        while p < self.max_bits {
            p = p.saturating_mul(2).min(self.max_bits);
            out.push(p);
        }
        Ok(out)
    }
}

/// Outcome of a sign decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignVerdict {
    Negative,
    Positive,
    /// Only the exact layer can say this.
    ExactZero,
    Undecided {
        precision_reached: u32,
        final_width: Dyadic,
    },
}

impl SignVerdict {
    pub fn is_certified_nonzero(&self) -> bool {
        matches!(self, SignVerdict::Negative | SignVerdict::Positive)
    }

    pub fn signum(&self) -> Option<i32> {
        match self {
            SignVerdict::Negative => Some(-1),
            SignVerdict::Positive => Some(1),
            SignVerdict::ExactZero => Some(0),
            SignVerdict::Undecided { .. } => None,
        }
    }
}

/// A sign verdict together with the enclosure and precision behind it.
#[derive(Debug, Clone)]
pub struct Certified {
    pub verdict: SignVerdict,
    pub interval: Interval,
    pub bits: u32,
}

/// Decide the sign of `x`, escalating precision along `policy`.
///
/// Fails only for ill-formed expressions (a square root of something
/// certainly negative) or a divisor that still contains zero at the last
/// rung of the ladder.
pub fn certify(x: &Real, policy: &PrecisionPolicy) -> Result<Certified, EvalError> {
    let ladder = policy.ladder()?;
    if let Some(q) = x.as_exact() {
        let verdict = match q.signum() {
            0 => SignVerdict::ExactZero,
            s if s > 0 => SignVerdict::Positive,
            _ => SignVerdict::Negative,
        };
        return Ok(Certified {
            verdict,
            interval: Interval::from_q5(q, policy.start_bits),
            bits: policy.start_bits,
        });
    }
    let mut last: Option<(Interval, u32)> = None;
    let max = *ladder.last().expect("nonempty ladder");
    for bits in ladder {
        let iv = match x.eval_rung(bits, bits == max) {
            Ok(iv) => iv,
            Err(Fault::Retry(e)) if bits == max => return Err(e),
            Err(Fault::Retry(_)) => continue,
            Err(Fault::Hard(e)) => return Err(e),
        };
        if let Some(s) = iv.certain_sign() {
            let verdict = if s > 0 {
                SignVerdict::Positive
            } else {
                SignVerdict::Negative
            };
            return Ok(Certified {
                verdict,
                interval: iv,
                bits,
            });
        }
        last = Some((iv, bits));
    }
    let (interval, bits) = last.expect("final rung evaluated");
    Ok(Certified {
        verdict: SignVerdict::Undecided {
            precision_reached: bits,
            final_width: interval.width(),
        },
        interval,
        bits,
    })
}

/// [`certify`] without the enclosure.
pub fn sign(x: &Real, policy: &PrecisionPolicy) -> Result<SignVerdict, EvalError> {
    certify(x, policy).map(|c| c.verdict)
}
