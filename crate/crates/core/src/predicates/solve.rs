//! Pentagon pyramid height that puts its apex in the ring plane.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;

use crate::catalog::{build_seed, SeedId};
use crate::mesh::{elevate, HeightRule, MeshError, Polyhedron};
use crate::scalar::{certify, Certified, Dyadic, Interval, PrecisionPolicy, Real, Round, SignVerdict};

use super::{apex_deviation, PredicateError};

#[derive(Clone, Debug)]
pub struct HeightSolution {
    /// Contains the coplanarizing pentagon height, in edge units.
    pub interval: Interval,
    /// Precision at which the enclosure met the tolerance.
    pub bits: u32,
    pub delta_at_lo: Certified,
    pub delta_at_hi: Certified,
    pub pentagon: usize,
}

impl HeightSolution {
    pub fn midpoint(&self) -> Dyadic {
        self.interval.midpoint()
    }
}

/// Deviation of the pentagon apex from the ring plane when pentagons get
/// height `pentagon_height` and every other face `other_height`.
pub fn deviation_for_heights(
    base: &Polyhedron,
    pentagon: usize,
    other_height: &Real,
    pentagon_height: &Real,
) -> Result<Real, PredicateError> {
    let mut map = BTreeMap::new();
    for n in base.arity_histogram().into_keys() {
        let h = if n == 5 { pentagon_height } else { other_height };
        map.insert(n, h.clone());
    }
    let e = elevate(base, &HeightRule::Explicit(map))?;
    apex_deviation(&e, pentagon)
}

/// Enclose the pentagon height `h*` with zero deviation, triangle height
/// fixed at `triangle_height`, to within `tol`.
///
/// The apex slides along a fixed axis, so the deviation is affine in the
/// pentagon height: two symbolic evaluations give `h*` in closed form, and
/// the returned bracket is validated by certified deviation signs at both
/// ends. `h*` may be negative (apex below the face) when the triangle
/// pyramids are short.
pub fn solve_coplanar_height(
    seed: SeedId,
    triangle_height: &Real,
    tol: &BigRational,
    policy: &PrecisionPolicy,
) -> Result<HeightSolution, PredicateError> {
    if !tol.is_positive() {
        return Err(PredicateError::NonPositiveTolerance);
    }
    if certify(triangle_height, policy)?.verdict == SignVerdict::Negative {
        return Err(MeshError::NegativeHeight(3).into());
    }
    let base = build_seed(seed);
    let pentagon = *base.faces_of_arity(5).first().ok_or(PredicateError::NoPentagon)?;

    let d0 = deviation_for_heights(&base, pentagon, triangle_height, &Real::zero())?;
    let d1 = deviation_for_heights(&base, pentagon, triangle_height, &Real::one())?;
    let slope = &d1 - &d0;
    if certify(&slope, policy)?.verdict != SignVerdict::Positive {
        return Err(PredicateError::NotIncreasing);
    }
    let root = -(&d0 / &slope);

    let target = Dyadic::from_rational(tol, 64, Round::Down);
    let (interval, bits) = root.eval_to_width(&target, policy)?;
    if interval.width().to_rational() > *tol {
        return Err(PredicateError::ToleranceUnreachable(bits));
    }

    // δ(h) = δ(0) + h·slope exactly, also for negative h
    let at = |h: &Dyadic| &d0 + &(&Real::from_dyadic(h) * &slope);
    let delta_at_lo = certify(&at(interval.lo()), policy)?;
    let delta_at_hi = certify(&at(interval.hi()), policy)?;
    let lo_ok = delta_at_lo.verdict == SignVerdict::Negative;
    let hi_ok = delta_at_hi.verdict == SignVerdict::Positive;
    if !(lo_ok && hi_ok) {
        return Err(PredicateError::ToleranceUnreachable(policy.max_bits));
    }
    Ok(HeightSolution {
        interval,
        bits,
        delta_at_lo,
        delta_at_hi,
        pentagon,
    })
}
