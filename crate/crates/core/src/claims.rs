//! The six-apex claim on the elevated icosidodecahedron, end to end.
//!
//! A pentagonal pyramid and the five triangular pyramids around it are said
//! to have coplanar tips, so the solid could rest on all six. The pipeline
//! builds the solid, certifies the ring of five triangle apexes as exactly
//! planar, measures how far the pentagon apex sits from that plane, checks
//! which tips actually touch a support plane, and solves for the pentagon
//! height that would have made the claim true.

use num_rational::BigRational;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{build_seed, SeedId};
use crate::io::{format_dyadic, format_rational, DecimalRounding};
use crate::mesh::{elevate, equilateral_height, ElevatedSolid, HeightRule, MeshError, Polyhedron};
use crate::predicates::{
    contact_and_stability, coplanarity, ring_plane, solve_coplanar_height, CoplanarityVerdict,
    PredicateError, Stability,
};
use crate::scalar::{certify, Certified, Interval, PrecisionPolicy, Real, SignVerdict};
use crate::TOOL_VERSION;

pub const PACIOLI_LII: &str = "pacioli-lii";

/// Significant digits for every decimal in a report.
pub const REPORT_DIGITS: usize = 48;

/// Width target for the corrected pentagon height.
pub fn default_tolerance() -> BigRational {
    crate::io::parse_decimal("1e-30").expect("literal")
}

#[derive(Clone, Debug)]
pub struct ClaimSpec {
    pub claim_id: String,
    pub seed: SeedId,
    pub rule: HeightRule,
    /// Defaults to the first pentagonal face in canonical order.
    pub pentagon: Option<usize>,
}

impl ClaimSpec {
    pub fn pacioli() -> Self {
        ClaimSpec {
            claim_id: PACIOLI_LII.to_owned(),
            seed: SeedId::Icosidodecahedron,
            rule: HeightRule::Equilateral,
            pentagon: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClaimError {
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("no equilateral pyramid on faces of arity {arity} ({seed})")]
    EquilateralInfeasible { seed: SeedId, arity: usize },
    #[error(transparent)]
    Predicate(#[from] PredicateError),
}

impl From<MeshError> for ClaimError {
    fn from(e: MeshError) -> Self {
        ClaimError::Predicate(PredicateError::Mesh(e))
    }
}

impl ClaimError {
    /// Configuration the geometry cannot realize, as opposed to a failure.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            ClaimError::EquilateralInfeasible { .. }
                | ClaimError::Predicate(PredicateError::NoPentagon)
                | ClaimError::Predicate(PredicateError::NotAPentagon(_))
                | ClaimError::Predicate(PredicateError::SymmetryUnavailable(_))
                | ClaimError::Predicate(PredicateError::Mesh(
                    MeshError::NegativeHeight(_) | MeshError::EquilateralInfeasible(_)
                ))
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Coplanar,
    NotCoplanar,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightRuleReport {
    pub triangle: String,
    pub pentagon: String,
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub lo: String,
    pub hi: String,
    pub relative_to_edge: bool,
}

/// `true`, `false` or `"marginal"` in JSON.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableField(pub Stability);

impl Serialize for StableField {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Stability::Yes => s.serialize_bool(true),
            Stability::No => s.serialize_bool(false),
            Stability::Marginal => s.serialize_str("marginal"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContactSummary {
    pub direction: String,
    pub touching: Vec<usize>,
    pub stable: StableField,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub lo: String,
    pub hi: String,
}

impl Bounds {
    /// Outward-rounded decimal image of `iv`.
    pub fn outward(iv: &Interval) -> Self {
        Bounds {
            lo: format_dyadic(iv.lo(), REPORT_DIGITS, DecimalRounding::Down),
            hi: format_dyadic(iv.hi(), REPORT_DIGITS, DecimalRounding::Up),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrecisionReport {
    pub start_bits: u32,
    pub used_bits: u32,
    pub max_bits: u32,
}

/// Field order here is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub seed: SeedId,
    pub height_rule: HeightRuleReport,
    pub verdict: Verdict,
    pub delta: DeltaReport,
    pub ring_certificate: String,
    pub contact: ContactSummary,
    pub corrected_pentagon_height: Bounds,
    pub precision: PrecisionReport,
    pub tool_version: String,
}

impl ClaimReport {
    /// Two-space indented JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Machine-readable refusal for configurations that cannot be built.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimRefusal {
    pub claim_id: String,
    pub seed: SeedId,
    pub refusal: String,
    pub face_arity: Option<usize>,
    pub note: String,
    pub tool_version: String,
}

impl ClaimRefusal {
    pub fn from_error(spec: &ClaimSpec, err: &ClaimError) -> Self {
        let face_arity = match err {
            ClaimError::EquilateralInfeasible { arity, .. } => Some(*arity),
            _ => None,
        };
        let note = match (spec.seed, face_arity) {
            (SeedId::TruncatedDodecahedron, Some(10)) => {
                "the truncated dodecahedron has 12 decagons and 20 triangles; \
                 twelve pentagonal plus twenty triangular pyramids fit the icosidodecahedron"
                    .to_owned()
            }
            _ => err.to_string(),
        };
        ClaimRefusal {
            claim_id: spec.claim_id.clone(),
            seed: spec.seed,
            refusal: match err {
                ClaimError::EquilateralInfeasible { .. } => "equilateral_infeasible".to_owned(),
                _ => "infeasible".to_owned(),
            },
            face_arity,
            note,
            tool_version: TOOL_VERSION.to_owned(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("refusal serializes");
        s.push('\n');
        s
    }
}

/// Enough bits that all `REPORT_DIGITS` digits of a height are right.
const HEIGHT_TEXT_BITS: u32 = 256;

fn height_text(h: Option<&Real>) -> String {
    match h.map(|h| h.eval(HEIGHT_TEXT_BITS)) {
        Some(Ok(iv)) => format_dyadic(&iv.midpoint(), REPORT_DIGITS, DecimalRounding::Nearest),
        Some(Err(_)) => "nan".to_owned(),
        None => "none".to_owned(),
    }
}

fn elevate_seed(seed: SeedId, base: &Polyhedron, rule: &HeightRule) -> Result<ElevatedSolid, ClaimError> {
    elevate(base, rule).map_err(|e| match e {
        MeshError::EquilateralInfeasible(arity) => ClaimError::EquilateralInfeasible { seed, arity },
        other => other.into(),
    })
}

/// Run the whole pipeline for `spec`.
pub fn run_claim(spec: &ClaimSpec, policy: &PrecisionPolicy) -> Result<ClaimReport, ClaimError> {
    if spec.claim_id != PACIOLI_LII {
        return Err(ClaimError::UnknownClaim(spec.claim_id.clone()));
    }
    policy.ladder().map_err(PredicateError::from)?;
    let base = build_seed(spec.seed);
    let solid = elevate_seed(spec.seed, &base, &spec.rule)?;
    let pentagon = match spec.pentagon {
        Some(f) => f,
        None => *base.faces_of_arity(5).first().ok_or(PredicateError::NoPentagon)?,
    };

    let ring = ring_plane(&solid, pentagon)?;
    let delta_real = ring.plane.residual(solid.apex(pentagon));
    let delta = certify(&delta_real, policy).map_err(PredicateError::from)?;

    // three ring apexes fix the ring plane, the pentagon apex is tested next,
    // and the remaining ring apexes follow (already exact by symmetry)
    let ring_apexes = ring.apexes(&solid);
    let mut six = ring_apexes[..3].to_vec();
    six.push(solid.apex(pentagon).clone());
    six.extend_from_slice(&ring_apexes[3..]);
    let verdict = match coplanarity(&six, policy)? {
        CoplanarityVerdict::CoplanarExact(_) => Verdict::Coplanar,
        CoplanarityVerdict::NotCoplanar { .. } => Verdict::NotCoplanar,
        CoplanarityVerdict::Undecided { .. } => Verdict::Undecided,
    };
    debug_assert!(verdict != Verdict::NotCoplanar || !delta.interval.contains_zero());

    let mesh = solid.mesh();
    let contact = contact_and_stability(&mesh, &solid.frame(pentagon).unit_normal, policy)?;

    let heights = solid.heights();
    let triangle = heights.get(&3).cloned().unwrap_or_else(Real::zero);
    let solution = solve_coplanar_height(spec.seed, &triangle, &default_tolerance(), policy)?;

    let used_bits = [delta.bits, solution.bits, solution.delta_at_lo.bits, solution.delta_at_hi.bits]
        .into_iter()
        .max()
        .expect("nonempty");
    Ok(ClaimReport {
        claim_id: spec.claim_id.clone(),
        seed: spec.seed,
        height_rule: HeightRuleReport {
            triangle: height_text(heights.get(&3)),
            pentagon: height_text(heights.get(&5)),
            mode: spec.rule.mode_name().to_owned(),
        },
        verdict,
        delta: DeltaReport {
            lo: Bounds::outward(&delta.interval).lo,
            hi: Bounds::outward(&delta.interval).hi,
            relative_to_edge: true,
        },
        ring_certificate: "symmetry_orbit".to_owned(),
        contact: ContactSummary {
            direction: "pentagon_axis".to_owned(),
            touching: contact.touching,
            stable: StableField(contact.stable),
        },
        corrected_pentagon_height: Bounds::outward(&solution.interval),
        precision: PrecisionReport {
            start_bits: policy.start_bits,
            used_bits,
            max_bits: policy.max_bits,
        },
        tool_version: TOOL_VERSION.to_owned(),
    })
}

/// A certified quantity: outward bounds and the sign they establish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedBounds {
    pub lo: String,
    pub hi: String,
    pub sign: &'static str,
}

fn sign_name(v: &SignVerdict) -> &'static str {
    match v {
        SignVerdict::Negative => "negative",
        SignVerdict::Positive => "positive",
        SignVerdict::ExactZero => "zero",
        SignVerdict::Undecided { .. } => "undecided",
    }
}

impl SignedBounds {
    fn from_certified(c: &Certified) -> Self {
        let b = Bounds::outward(&c.interval);
        SignedBounds {
            lo: b.lo,
            hi: b.hi,
            sign: sign_name(&c.verdict),
        }
    }
}

/// Output of the coplanarizing-height solver. Field order is JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightReport {
    pub seed: SeedId,
    pub pentagon: usize,
    pub triangle_height: String,
    pub tolerance: String,
    pub corrected_pentagon_height: Bounds,
    pub midpoint: String,
    pub width: String,
    pub delta_at_lo: SignedBounds,
    pub delta_at_hi: SignedBounds,
    pub equilateral_pentagon_height: String,
    /// Certified sign of corrected minus equilateral pentagon height.
    pub versus_equilateral: &'static str,
    pub precision: PrecisionReport,
    pub tool_version: String,
}

impl HeightReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The solver certified both bracket signs and the comparison.
    pub fn is_decided(&self) -> bool {
        self.versus_equilateral != "undecided"
    }
}

pub fn run_solve(
    seed: SeedId,
    triangle_height: &Real,
    tol: &BigRational,
    policy: &PrecisionPolicy,
) -> Result<HeightReport, ClaimError> {
    let s = solve_coplanar_height(seed, triangle_height, tol, policy)?;
    let h_eq = equilateral_height(5).expect("pentagons admit equilateral pyramids");
    let below = certify(&(&Real::from_dyadic(s.interval.hi()) - &h_eq), policy).map_err(PredicateError::from)?;
    let above = certify(&(&Real::from_dyadic(s.interval.lo()) - &h_eq), policy).map_err(PredicateError::from)?;
    let versus_equilateral = if below.verdict == SignVerdict::Negative {
        "negative"
    } else if above.verdict == SignVerdict::Positive {
        "positive"
    } else {
        "undecided"
    };
    let used_bits = [s.bits, s.delta_at_lo.bits, s.delta_at_hi.bits, below.bits, above.bits]
        .into_iter()
        .max()
        .expect("nonempty");
    Ok(HeightReport {
        seed,
        pentagon: s.pentagon,
        triangle_height: height_text(Some(triangle_height)),
        tolerance: format_rational(tol, REPORT_DIGITS, DecimalRounding::Nearest),
        corrected_pentagon_height: Bounds::outward(&s.interval),
        midpoint: format_dyadic(&s.midpoint(), REPORT_DIGITS, DecimalRounding::Nearest),
        width: format_dyadic(&s.interval.width(), REPORT_DIGITS, DecimalRounding::Up),
        delta_at_lo: SignedBounds::from_certified(&s.delta_at_lo),
        delta_at_hi: SignedBounds::from_certified(&s.delta_at_hi),
        equilateral_pentagon_height: height_text(Some(&h_eq)),
        versus_equilateral,
        precision: PrecisionReport {
            start_bits: policy.start_bits,
            used_bits,
            max_bits: policy.max_bits,
        },
        tool_version: TOOL_VERSION.to_owned(),
    })
}

/// Where a solid rests when pushed along one face's outward axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContactRun {
    pub seed: SeedId,
    /// `"none"` for the bare seed.
    pub height_rule: String,
    pub face: usize,
    pub face_arity: usize,
    pub direction: String,
    pub touching: Vec<usize>,
    pub marginal: Vec<usize>,
    pub stable: StableField,
    pub tool_version: String,
}

impl ContactRun {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Contact analysis along the outward axis of base face `face`, on the
/// bare seed or its elevation under `rule`.
pub fn run_contact(
    seed: SeedId,
    rule: Option<&HeightRule>,
    face: usize,
    policy: &PrecisionPolicy,
) -> Result<ContactRun, ClaimError> {
    let base = build_seed(seed);
    let arity = base.faces().get(face).ok_or(MeshError::NoSuchFace(face))?.len();
    let (mesh, axis, mode) = match rule {
        None => {
            let frame = crate::mesh::face_frame(&base, face)?;
            (base, frame.unit_normal, "none")
        }
        Some(rule) => {
            let solid = elevate_seed(seed, &base, rule)?;
            (solid.mesh(), solid.frame(face).unit_normal.clone(), rule.mode_name())
        }
    };
    let c = contact_and_stability(&mesh, &axis, policy)?;
    Ok(ContactRun {
        seed,
        height_rule: mode.to_owned(),
        face,
        face_arity: arity,
        direction: "face_axis".to_owned(),
        touching: c.touching,
        marginal: c.marginal,
        stable: StableField(c.stable),
        tool_version: TOOL_VERSION.to_owned(),
    })
}
