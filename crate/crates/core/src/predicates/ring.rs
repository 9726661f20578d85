//! The ring of five pyramid apexes around a pentagon, and how far the
//! pentagon's own apex sits from their plane.

use std::collections::HashMap;

use crate::mesh::{derive_topology, ElevatedSolid};
use crate::scalar::{ExactQ5, Real};
use crate::vector::{exact_cross, exact_dot, exact_is_zero, ExactVec3, Vec3};

use super::{mat_apply, mat_identity, mat_mul, Mat3, Plane, PredicateError};

/// An exact order-5 rotation about a pentagon axis that maps the seed onto
/// itself, and the orbit it traces through the neighbouring faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryCertificate {
    /// Row-major.
    pub rotation: [[ExactQ5; 3]; 3],
    /// Neighbouring faces in orbit order, starting with the smallest index.
    pub orbit: Vec<usize>,
    /// Image of each base vertex under the rotation.
    pub vertex_permutation: Vec<usize>,
}

impl SymmetryCertificate {
    /// Re-check every claim against `e`'s base in exact arithmetic.
    pub fn verify(&self, e: &ElevatedSolid) -> bool {
        let Some(verts) = e.base().exact_vertices() else {
            return false;
        };
        let mut power = mat_identity();
        for _ in 0..5 {
            power = mat_mul(&power, &self.rotation);
        }
        if power != mat_identity() || self.rotation == mat_identity() {
            return false;
        }
        let perm_ok = verts
            .iter()
            .enumerate()
            .all(|(i, v)| mat_apply(&self.rotation, v) == verts[self.vertex_permutation[i]]);
        let faces = e.base().faces();
        let orbit_ok = (0..self.orbit.len()).all(|k| {
            let next = self.orbit[(k + 1) % self.orbit.len()];
            sorted_image(&faces[self.orbit[k]], &self.vertex_permutation) == sorted(&faces[next])
        });
        perm_ok && orbit_ok
    }
}

#[derive(Clone, Debug)]
pub struct RingPlane {
    pub plane: Plane,
    pub certificate: SymmetryCertificate,
    pub pentagon: usize,
}

impl RingPlane {
    /// The five ring apexes, in orbit order.
    pub fn apexes(&self, e: &ElevatedSolid) -> Vec<Vec3> {
        self.certificate.orbit.iter().map(|&f| e.apex(f).clone()).collect()
    }
}

fn sorted(face: &[usize]) -> Vec<usize> {
    let mut v = face.to_vec();
    v.sort_unstable();
    v
}

fn sorted_image(face: &[usize], perm: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = face.iter().map(|&i| perm[i]).collect();
    v.sort_unstable();
    v
}

/// Plane of the apexes on the five faces edge-adjacent to `pentagon`,
/// proven exact by a rotation certificate.
pub fn ring_plane(e: &ElevatedSolid, pentagon: usize) -> Result<RingPlane, PredicateError> {
    let base = e.base();
    let face = base
        .faces()
        .get(pentagon)
        .ok_or(PredicateError::Mesh(crate::mesh::MeshError::NoSuchFace(pentagon)))?;
    if face.len() != 5 {
        return Err(PredicateError::NotAPentagon(pentagon));
    }
    let unavailable = |why: &str| PredicateError::SymmetryUnavailable(why.to_owned());
    let verts = base
        .exact_vertices()
        .ok_or_else(|| unavailable("base coordinates are not exact"))?;
    let axis = e
        .frame(pentagon)
        .normal
        .as_exact()
        .ok_or_else(|| unavailable("pentagon normal is not exact"))?;
    let centroid = e
        .frame(pentagon)
        .centroid
        .as_exact()
        .ok_or_else(|| unavailable("pentagon centroid is not exact"))?;
    if !exact_is_zero(&exact_cross(&centroid, &axis)) {
        return Err(unavailable("pentagon axis misses the origin"));
    }

    let rotation = rotation_72(&axis).ok_or_else(|| unavailable("sin 72°/|axis| is not in Q(√5)"))?;
    let mut power = mat_identity();
    for _ in 0..5 {
        power = mat_mul(&power, &rotation);
    }
    if power != mat_identity() {
        return Err(unavailable("rotation⁵ ≠ identity"));
    }
    if mat_apply(&rotation, &axis) != axis {
        return Err(unavailable("rotation moves its axis"));
    }

    let index: HashMap<&ExactVec3, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let vertex_permutation = verts
        .iter()
        .map(|v| index.get(&mat_apply(&rotation, v)).copied())
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| unavailable("rotation does not preserve the vertex set"))?;

    let topo = derive_topology(base)?;
    let ring = &topo.face_adjacency[pentagon];
    if ring.len() != 5 {
        return Err(unavailable("pentagon does not have five neighbours"));
    }
    let by_vertices: HashMap<Vec<usize>, usize> = ring.iter().map(|&f| (sorted(&base.faces()[f]), f)).collect();
    let mut orbit = vec![ring[0]];
    for _ in 0..4 {
        let last = *orbit.last().expect("nonempty");
        let image = sorted_image(&base.faces()[last], &vertex_permutation);
        let next = *by_vertices
            .get(&image)
            .ok_or_else(|| unavailable("rotation does not permute the ring"))?;
        orbit.push(next);
    }
    let mut distinct = orbit.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 5 {
        return Err(unavailable("ring is not a single orbit"));
    }

    let unit = e.frame(pentagon).unit_normal.clone();
    let offset = unit.dot(e.apex(orbit[0]));
    Ok(RingPlane {
        plane: Plane { normal: unit, offset },
        certificate: SymmetryCertificate {
            rotation,
            orbit,
            vertex_permutation,
        },
        pentagon,
    })
}

/// Rotation by 72° about `axis` (right-handed), if its entries lie in Q(√5).
///
/// R = cos θ·I + sin θ·[u]ₓ + (1 − cos θ)·u uᵀ with u = axis/|axis|; the
/// only square root needed is sin θ/|axis|.
fn rotation_72(axis: &ExactVec3) -> Option<Mat3> {
    let m = exact_dot(axis, axis);
    let cos = ExactQ5::from_parts(-1, 4, 1, 4);
    let sin2 = ExactQ5::from_parts(5, 8, 1, 8);
    let s = (&sin2 / &m).sqrt_exact()?;
    let k = &(&ExactQ5::one() - &cos) / &m;
    let [x, y, z] = axis;
    let skew = [
        [ExactQ5::zero(), -z, y.clone()],
        [z.clone(), ExactQ5::zero(), -x],
        [-y, x.clone(), ExactQ5::zero()],
    ];
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let diag = if i == j { cos.clone() } else { ExactQ5::zero() };
            diag + &s * &skew[i][j] + &k * &(&axis[i] * &axis[j])
        })
    }))
}

/// Signed distance of the pentagon apex from the ring plane, positive when
/// it lies beyond the plane on the outward side.
pub fn apex_deviation(e: &ElevatedSolid, pentagon: usize) -> Result<Real, PredicateError> {
    let ring = ring_plane(e, pentagon)?;
    Ok(ring.plane.residual(e.apex(pentagon)))
}
