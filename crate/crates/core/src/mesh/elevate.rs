//! Erecting a pyramid on every face.

use std::collections::BTreeMap;

use crate::scalar::{certify, ExactQ5, PrecisionPolicy, Real, SignVerdict};
use crate::vector::Vec3;

use super::{face_frame_with, FaceFrame, MeshError, Polyhedron};

/// How tall each pyramid is, in units of its face's edge length.
#[derive(Clone, Debug)]
pub enum HeightRule {
    /// Lateral edges as long as the base edges. Needs arity ≤ 5.
    Equilateral,
    /// Height per face arity.
    Explicit(BTreeMap<usize, Real>),
    /// Apex at the face centroid.
    Zero,
}

impl HeightRule {
    pub fn mode_name(&self) -> &'static str {
        match self {
            HeightRule::Equilateral => "equilateral",
            HeightRule::Explicit(_) => "explicit",
            HeightRule::Zero => "zero",
        }
    }
}

/// Height, in edge units, of the pyramid on a regular `arity`-gon whose
/// lateral edges equal its base edges. `None` from arity 6 on.
pub fn equilateral_height(arity: usize) -> Option<Real> {
    // h² = 1 − r², r the circumradius of the unit-edge polygon
    let h2 = match arity {
        3 => ExactQ5::ratio(2, 3),
        4 => ExactQ5::ratio(1, 2),
        5 => ExactQ5::from_parts(1, 2, -1, 10),
        _ => return None,
    };
    Some(Real::exact(h2).sqrt())
}

/// A base polyhedron with one apex per face.
#[derive(Clone, Debug)]
pub struct ElevatedSolid {
    base: Polyhedron,
    apexes: Vec<Vec3>,
    frames: Vec<FaceFrame>,
    heights: BTreeMap<usize, Real>,
    rule: HeightRule,
}

impl ElevatedSolid {
    pub fn base(&self) -> &Polyhedron {
        &self.base
    }

    pub fn rule(&self) -> &HeightRule {
        &self.rule
    }

    pub fn apex(&self, face: usize) -> &Vec3 {
        &self.apexes[face]
    }

    pub fn apexes(&self) -> &[Vec3] {
        &self.apexes
    }

    pub fn frame(&self, face: usize) -> &FaceFrame {
        &self.frames[face]
    }

    /// Height per face arity, in edge-length units.
    pub fn heights(&self) -> &BTreeMap<usize, Real> {
        &self.heights
    }

    /// Index of a face's apex in [`ElevatedSolid::mesh`].
    pub fn apex_vertex(&self, face: usize) -> usize {
        self.base.vertex_count() + face
    }

    /// Triangulated surface: base vertices, then apexes in face order; each
    /// base face replaced by its lateral triangles.
    pub fn mesh(&self) -> Polyhedron {
        let nv = self.base.vertex_count();
        let mut vertices = self.base.vertices().to_vec();
        vertices.extend(self.apexes.iter().cloned());
        let mut faces = Vec::new();
        let mut labels = Vec::new();
        for (f, face) in self.base.faces().iter().enumerate() {
            let n = face.len();
            for i in 0..n {
                faces.push(vec![face[i], face[(i + 1) % n], nv + f]);
                labels.push(Some(format!("pyramid {f} ({n}-gon) side {i}")));
            }
        }
        Polyhedron::new(vertices, faces)
            .expect("lateral triangles are well formed")
            .with_labels(labels)
    }
}

pub fn elevate(p: &Polyhedron, rule: &HeightRule) -> Result<ElevatedSolid, MeshError> {
    elevate_with(p, rule, &PrecisionPolicy::default())
}

pub fn elevate_with(
    p: &Polyhedron,
    rule: &HeightRule,
    policy: &PrecisionPolicy,
) -> Result<ElevatedSolid, MeshError> {
    let arities = p.arity_histogram();
    match rule {
        HeightRule::Equilateral => {
            if let Some(&n) = arities.keys().rev().find(|&&n| n >= 6) {
                return Err(MeshError::EquilateralInfeasible(n));
            }
        }
        HeightRule::Explicit(map) => {
            for &n in arities.keys() {
                let h = map.get(&n).ok_or(MeshError::MissingHeight(n))?;
                if certify(h, policy)?.verdict == SignVerdict::Negative {
                    return Err(MeshError::NegativeHeight(n));
                }
            }
        }
        HeightRule::Zero => {}
    }

    let mut apexes = Vec::with_capacity(p.face_count());
    let mut frames = Vec::with_capacity(p.face_count());
    let mut heights = BTreeMap::new();
    for f in 0..p.face_count() {
        let frame = face_frame_with(p, f, policy)?;
        let pts = p.face_points(f);
        let arity = pts.len();
        let edge2 = (&pts[1] - &pts[0]).norm_squared();
        let n2 = frame.normal.norm_squared();
        // apex = centroid + factor·normal, with factor = height / |normal|
        let (factor, height) = match rule {
            HeightRule::Zero => (Real::zero(), Real::zero()),
            HeightRule::Equilateral => {
                let r2 = (&frame.centroid - &pts[0]).norm_squared();
                let h2 = &edge2 - &r2;
                if certify(&h2, policy)?.verdict != SignVerdict::Positive {
                    return Err(MeshError::EquilateralInfeasible(arity));
                }
                ((&h2 / &n2).sqrt(), (&h2 / &edge2).sqrt())
            }
            HeightRule::Explicit(map) => {
                let h = map[&arity].clone();
                (&h * &(&edge2 / &n2).sqrt(), h)
            }
        };
        heights.entry(arity).or_insert(height);
        apexes.push(&frame.centroid + &frame.normal.scale(&factor));
        frames.push(frame);
    }
    Ok(ElevatedSolid {
        base: p.clone(),
        apexes,
        frames,
        heights,
        rule: rule.clone(),
    })
}
