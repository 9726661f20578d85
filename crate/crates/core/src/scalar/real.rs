//! Immutable expression graphs over Q(√5) leaves, evaluated to certified
//! intervals at a caller-chosen precision.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use super::dyadic::Dyadic;
use super::interval::Interval;
use super::q5::ExactQ5;
use super::{EvalError, PrecisionPolicy, MIN_PRECISION};

/// A real number given by how to compute it.
///
/// Cloning is cheap (shared subgraphs). Operations whose operands are all
/// exact fold immediately into an exact leaf, so anything built only from
/// field operations on Q(√5) values stays in the exact layer.
#[derive(Clone)]
pub struct Real(Arc<Node>);

enum Node {
    Exact(ExactQ5),
    Add(Real, Real),
    Sub(Real, Real),
    Mul(Real, Real),
    Div(Real, Real),
    Neg(Real),
    Sqrt(Real),
}

/// Evaluation failure classes. Retryable faults may vanish at a higher
/// precision; hard faults never will.
pub(crate) enum Fault {
    Retry(EvalError),
    Hard(EvalError),
}

impl Real {
    pub fn exact(x: ExactQ5) -> Real {
        Real(Arc::new(Node::Exact(x)))
    }

    pub fn from_int(n: i64) -> Real {
        Self::exact(ExactQ5::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Real {
        Self::exact(ExactQ5::ratio(num, den))
    }

    pub fn from_rational(r: BigRational) -> Real {
        Self::exact(ExactQ5::from_rational(r))
    }

    pub fn from_dyadic(d: &Dyadic) -> Real {
        Self::from_rational(d.to_rational())
    }

    pub fn zero() -> Real {
        Self::from_int(0)
    }

    pub fn one() -> Real {
        Self::from_int(1)
    }

    /// The exact value, when this node lives in the exact layer.
    pub fn as_exact(&self) -> Option<&ExactQ5> {
        match &*self.0 {
            Node::Exact(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.as_exact().is_some_and(ExactQ5::is_zero)
    }

    fn node(n: Node) -> Real {
        Real(Arc::new(n))
    }

    pub fn sqrt(&self) -> Real {
        if let Some(r) = self.as_exact().and_then(ExactQ5::sqrt_exact) {
            return Real::exact(r);
        }
        Self::node(Node::Sqrt(self.clone()))
    }

    /// `x·x` built from one shared operand, which `sqrt` recognizes as
    /// provably nonnegative.
    pub fn square(&self) -> Real {
        if let Some(x) = self.as_exact() {
            return Real::exact(x.square());
        }
        Self::node(Node::Mul(self.clone(), self.clone()))
    }

    /// Whether two handles share the same graph node.
    pub fn same_node(&self, other: &Real) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Number of distinct nodes reachable from this one.
    pub fn node_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(r) = stack.pop() {
            if !seen.insert(Arc::as_ptr(&r.0)) {
                continue;
            }
            match &*r.0 {
                Node::Exact(_) => {}
                Node::Neg(a) | Node::Sqrt(a) => stack.push(a.clone()),
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
            }
        }
        seen.len()
    }

    /// Certified enclosure at `precision` bits. Straddling operands are not
    /// retried here: this precision is treated as the last one available.
    pub fn eval(&self, precision: u32) -> Result<Interval, EvalError> {
        check_precision(precision)?;
        Evaluator::new(precision, true)
            .eval(self)
            .map_err(|f| match f {
                Fault::Retry(e) | Fault::Hard(e) => e,
            })
    }

    pub(crate) fn eval_rung(&self, bits: u32, last_rung: bool) -> Result<Interval, Fault> {
        Evaluator::new(bits, last_rung).eval(self)
    }

    /// Walk the precision ladder until evaluation succeeds; returns the
    /// enclosure and the precision that produced it.
    pub fn eval_escalating(&self, policy: &PrecisionPolicy) -> Result<(Interval, u32), EvalError> {
        let ladder = policy.ladder()?;
        let last = *ladder.last().expect("ladder is nonempty");
        for bits in ladder {
            match Evaluator::new(bits, bits == last).eval(self) {
                Ok(iv) => return Ok((iv, bits)),
                Err(Fault::Retry(e)) if bits == last => return Err(e),
                Err(Fault::Retry(_)) => continue,
                Err(Fault::Hard(e)) => return Err(e),
            }
        }
        unreachable!("the final rung either succeeds or errors")
    }

    /// Escalate until the enclosure is at most `width` wide.
    pub fn eval_to_width(
        &self,
        width: &Dyadic,
        policy: &PrecisionPolicy,
    ) -> Result<(Interval, u32), EvalError> {
        let ladder = policy.ladder()?;
        let last = *ladder.last().expect("ladder is nonempty");
        let mut best: Option<(Interval, u32)> = None;
        for bits in ladder {
            match Evaluator::new(bits, bits == last).eval(self) {
                Ok(iv) => {
                    let iv = match &best {
                        Some((prev, _)) => prev.intersect(&iv).unwrap_or(iv),
                        None => iv,
                    };
                    let done = &iv.width() <= width;
                    best = Some((iv, bits));
                    if done {
                        break;
                    }
                }
                Err(Fault::Retry(e)) if bits == last => return Err(e),
                Err(Fault::Retry(_)) => continue,
                Err(Fault::Hard(e)) => return Err(e),
            }
        }
        Ok(best.expect("final rung produced a value"))
    }

    /// Rough `f64` value; NaN if the expression cannot be evaluated.
    pub fn approx(&self) -> f64 {
        if let Some(x) = self.as_exact() {
            return x.to_f64();
        }
        self.eval(64)
            .map(|iv| iv.midpoint().to_f64())
            .unwrap_or(f64::NAN)
    }
}

fn check_precision(bits: u32) -> Result<(), EvalError> {
    if bits < MIN_PRECISION {
        Err(EvalError::PrecisionTooLow(bits))
    } else {
        Ok(())
    }
}

struct Evaluator {
    prec: u32,
    last_rung: bool,
    memo: HashMap<*const Node, Interval>,
}

impl Evaluator {
    fn new(prec: u32, last_rung: bool) -> Self {
        Evaluator {
            prec,
            last_rung,
            memo: HashMap::new(),
        }
    }

    fn eval(&mut self, x: &Real) -> Result<Interval, Fault> {
        let key = Arc::as_ptr(&x.0);
        if let Some(iv) = self.memo.get(&key) {
            return Ok(iv.clone());
        }
        let p = self.prec;
        let iv = match &*x.0 {
            Node::Exact(q) => Interval::from_q5(q, p),
            Node::Add(a, b) => self.eval(a)?.add(&self.eval(b)?, p),
            Node::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?, p),
            Node::Mul(a, b) if a.same_node(b) => self.eval(a)?.square(p),
            Node::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?, p),
            Node::Div(a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                num.div(&den, p)
                    .ok_or(Fault::Retry(EvalError::DivisorStraddlesZero))?
            }
            Node::Neg(a) => self.eval(a)?.neg(),
            Node::Sqrt(a) => {
                let v = self.eval(a)?;
                if v.hi().signum() < 0 {
                    return Err(Fault::Hard(EvalError::SqrtOfNegative));
                }
                if v.lo().signum() < 0 {
                    let syntactic_square =
                        matches!(&*a.0, Node::Mul(l, r) if l.same_node(r));
                    if syntactic_square {
                        v.clamp_nonnegative().sqrt(p)
                    } else if self.last_rung {
                        return Err(Fault::Hard(EvalError::SqrtOfNegative));
                    } else {
                        return Err(Fault::Retry(EvalError::SqrtOfNegative));
                    }
                } else {
                    v.sqrt(p)
                }
            }
        };
        self.memo.insert(key, iv.clone());
        Ok(iv)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_exact() {
            Some(x) => write!(f, "Real::exact({x})"),
            None => write!(f, "Real(~{:e}, {} nodes)", self.approx(), self.node_count()),
        }
    }
}

impl From<ExactQ5> for Real {
    fn from(x: ExactQ5) -> Self {
        Real::exact(x)
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Self {
        Real::from_int(n)
    }
}

impl<'a> Add<&'a Real> for &'a Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        match (self.as_exact(), rhs.as_exact()) {
            (Some(a), Some(b)) => Real::exact(a + b),
            (Some(a), _) if a.is_zero() => rhs.clone(),
            (_, Some(b)) if b.is_zero() => self.clone(),
            _ => Real::node(Node::Add(self.clone(), rhs.clone())),
        }
    }
}

impl<'a> Sub<&'a Real> for &'a Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        match (self.as_exact(), rhs.as_exact()) {
            (Some(a), Some(b)) => Real::exact(a - b),
            (Some(a), _) if a.is_zero() => -rhs,
            (_, Some(b)) if b.is_zero() => self.clone(),
            _ => Real::node(Node::Sub(self.clone(), rhs.clone())),
        }
    }
}

impl<'a> Mul<&'a Real> for &'a Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        match (self.as_exact(), rhs.as_exact()) {
            (Some(a), Some(b)) => Real::exact(a * b),
            (Some(a), _) | (_, Some(a)) if a.is_zero() => Real::zero(),
            (Some(a), _) if *a == ExactQ5::one() => rhs.clone(),
            (_, Some(b)) if *b == ExactQ5::one() => self.clone(),
            _ if self.same_node(rhs) => self.square(),
            _ => Real::node(Node::Mul(self.clone(), rhs.clone())),
        }
    }
}

/// Division by an exact zero is not folded; it fails at evaluation time.
impl<'a> Div<&'a Real> for &'a Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        match (self.as_exact(), rhs.as_exact()) {
            (Some(a), Some(b)) if !b.is_zero() => Real::exact(a / b),
            (_, Some(b)) if *b == ExactQ5::one() => self.clone(),
            _ => Real::node(Node::Div(self.clone(), rhs.clone())),
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self.as_exact() {
            Some(a) => Real::exact(-a),
            None => Real::node(Node::Neg(self.clone())),
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real { (&self).$m(rhs) }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);
