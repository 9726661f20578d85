//! Certified geometric predicates.

mod contact;
mod ring;
mod solve;

pub use contact::{contact_and_stability, ContactReport, Stability};
pub use ring::{apex_deviation, ring_plane, RingPlane, SymmetryCertificate};
pub use solve::{deviation_for_heights, solve_coplanar_height, HeightSolution};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::mesh::MeshError;
use crate::scalar::{certify, Dyadic, EvalError, ExactQ5, Interval, PrecisionPolicy, Real, SignVerdict};
use crate::vector::{exact_cross, exact_dot, exact_is_zero, exact_sub, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PredicateError {
    #[error("coplanarity needs at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("the first three points are not certifiably non-collinear")]
    CollinearBase,
    #[error("face {0} is not a pentagon")]
    NotAPentagon(usize),
    #[error("solid has no pentagonal face")]
    NoPentagon,
    #[error("no exact symmetry certificate: {0}")]
    SymmetryUnavailable(String),
    #[error("direction is zero")]
    ZeroDirection,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("deviation is not increasing in the pentagon height")]
    NotIncreasing,
    #[error("bracket endpoint signs not certified at {0} bits")]
    ToleranceUnreachable(u32),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// `{x : normal·x = offset}`; `normal` points to the outward side.
#[derive(Clone, Debug)]
pub struct Plane {
    pub normal: Vec3,
    pub offset: Real,
}

impl Plane {
    /// `normal·p − offset`, a distance when `normal` has unit length.
    pub fn residual(&self, p: &Vec3) -> Real {
        &self.normal.dot(p) - &self.offset
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoplanarityCertificate {
    /// All orientation determinants vanish in exact arithmetic.
    RationalRank,
    /// The points form one orbit of an exact rotation about the plane normal.
    SymmetryOrbit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoplanarityVerdict {
    CoplanarExact(CoplanarityCertificate),
    NotCoplanar {
        witness: usize,
        /// Signed distance from the plane of the first three points,
        /// positive on the side of `(p1 − p0) × (p2 − p0)`.
        signed_distance: Interval,
    },
    Undecided {
        final_width: Dyadic,
        precision_reached: u32,
    },
}

/// Are all `points` in the plane of the first three?
///
/// Exact inputs are decided exactly. Otherwise each later point's signed
/// distance is certified in index order with precision escalation, and the
/// first point certified off the plane is the witness.
pub fn coplanarity(points: &[Vec3], policy: &PrecisionPolicy) -> Result<CoplanarityVerdict, PredicateError> {
    if points.len() < 4 {
        return Err(PredicateError::TooFewPoints(points.len()));
    }
    if let Some(exact) = points.iter().map(Vec3::as_exact).collect::<Option<Vec<_>>>() {
        let n = exact_cross(&exact_sub(&exact[1], &exact[0]), &exact_sub(&exact[2], &exact[0]));
        if exact_is_zero(&n) {
            return Err(PredicateError::CollinearBase);
        }
        for (i, p) in exact.iter().enumerate().skip(3) {
            let det = exact_dot(&n, &exact_sub(p, &exact[0]));
            if !det.is_zero() {
                let nn = Real::exact(exact_dot(&n, &n));
                let dist = Real::exact(det) / nn.sqrt();
                let c = certify(&dist, policy)?;
                return Ok(CoplanarityVerdict::NotCoplanar {
                    witness: i,
                    signed_distance: c.interval,
                });
            }
        }
        return Ok(CoplanarityVerdict::CoplanarExact(CoplanarityCertificate::RationalRank));
    }

    let n = (&points[1] - &points[0]).cross(&(&points[2] - &points[0]));
    let nn = n.norm_squared();
    if certify(&nn, policy)?.verdict != SignVerdict::Positive {
        return Err(PredicateError::CollinearBase);
    }
    let len = nn.sqrt();
    let mut undecided: Option<(Dyadic, u32)> = None;
    for (i, p) in points.iter().enumerate().skip(3) {
        let dist = &n.dot(&(p - &points[0])) / &len;
        let c = certify(&dist, policy)?;
        match c.verdict {
            SignVerdict::Positive | SignVerdict::Negative => {
                return Ok(CoplanarityVerdict::NotCoplanar {
                    witness: i,
                    signed_distance: c.interval,
                })
            }
            SignVerdict::ExactZero => {}
            SignVerdict::Undecided {
                precision_reached,
                final_width,
            } => {
                let wider = undecided.as_ref().map_or(true, |(w, _)| final_width > *w);
                if wider {
                    undecided = Some((final_width, precision_reached));
                }
            }
        }
    }
    Ok(match undecided {
        Some((final_width, precision_reached)) => CoplanarityVerdict::Undecided {
            final_width,
            precision_reached,
        },
        None => CoplanarityVerdict::CoplanarExact(CoplanarityCertificate::RationalRank),
    })
}

/// `2^-k` as a rational, handy for tolerance comparisons.
pub fn pow2_neg(k: u32) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(1) << k)
}

/// Exact 3×3 matrix helpers for the symmetry certificate.
pub(crate) type Mat3 = [[ExactQ5; 3]; 3];

pub(crate) fn mat_identity() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| ExactQ5::from_int((i == j) as i64)))
}

pub(crate) fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(ExactQ5::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
    })
}

pub(crate) fn mat_apply(a: &Mat3, v: &[ExactQ5; 3]) -> [ExactQ5; 3] {
    std::array::from_fn(|i| exact_dot(&a[i], v))
}
