//! Oriented face-vertex polyhedra, their combinatorics, and per-face frames.

mod elevate;

pub use elevate::{elevate, equilateral_height, ElevatedSolid, HeightRule};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{certify, EvalError, ExactQ5, PrecisionPolicy, Real, SignVerdict};
use crate::vector::{centroid, ExactVec3, Vec3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("face {face} has fewer than 3 distinct vertices")]
    ShortFace { face: usize },
    #[error("face {face} references vertex {index}, but there are {count} vertices")]
    IndexOutOfRange {
        face: usize,
        index: usize,
        count: usize,
    },
    #[error("face index {0} out of range")]
    NoSuchFace(usize),
    #[error("edge {a}-{b} borders {count} faces")]
    NonManifoldEdge { a: usize, b: usize, count: usize },
    #[error("faces {f} and {g} traverse edge {a}-{b} in the same direction")]
    OrientationMismatch {
        a: usize,
        b: usize,
        f: usize,
        g: usize,
    },
    #[error("face {0} is degenerate (collinear vertices)")]
    DegenerateFace(usize),
    #[error("no equilateral pyramid exists on a face of arity {0}")]
    EquilateralInfeasible(usize),
    #[error("negative pyramid height for faces of arity {0}")]
    NegativeHeight(usize),
    #[error("no height given for faces of arity {0}")]
    MissingHeight(usize),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Vertices plus oriented faces (counterclockwise seen from outside).
#[derive(Clone, Debug)]
pub struct Polyhedron {
    vertices: Vec<Vec3>,
    faces: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

impl Polyhedron {
    /// Checks only face well-formedness; use [`derive_topology`] for the
    /// manifold and orientation conditions.
    pub fn new(vertices: Vec<Vec3>, faces: Vec<Vec<usize>>) -> Result<Self, MeshError> {
        let count = vertices.len();
        for (f, face) in faces.iter().enumerate() {
            if let Some(&index) = face.iter().find(|&&i| i >= count) {
                return Err(MeshError::IndexOutOfRange { face: f, index, count });
            }
            let mut distinct = face.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() < 3 || distinct.len() != face.len() {
                return Err(MeshError::ShortFace { face: f });
            }
        }
        let labels = vec![None; faces.len()];
        Ok(Polyhedron {
            vertices,
            faces,
            labels,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.faces.len(), "one label per face");
        self.labels = labels;
        self
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_points(&self, f: usize) -> Vec<Vec3> {
        self.faces[f].iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Every vertex with exact coordinates, or `None`.
    pub fn exact_vertices(&self) -> Option<Vec<ExactVec3>> {
        self.vertices.iter().map(Vec3::as_exact).collect()
    }

    /// Face count per arity.
    pub fn arity_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for f in &self.faces {
            *h.entry(f.len()).or_insert(0) += 1;
        }
        h
    }

    /// Indices of faces with `arity` sides, in face order.
    pub fn faces_of_arity(&self, arity: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&f| self.faces[f].len() == arity)
            .collect()
    }

    /// Number of undirected edges (no manifold check).
    pub fn edge_count(&self) -> usize {
        let mut edges: Vec<(usize, usize)> = self
            .faces
            .iter()
            .flat_map(|f| cycle_pairs(f).map(|(a, b)| (a.min(b), a.max(b))))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Uniform scaling of every coordinate by an exact factor.
    pub fn scaled(&self, k: &ExactQ5) -> Polyhedron {
        let k = Real::exact(k.clone());
        Polyhedron {
            vertices: self.vertices.iter().map(|v| v.scale(&k)).collect(),
            faces: self.faces.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Apply a linear map given row-wise with exact entries.
    pub fn transformed(&self, m: &[[ExactQ5; 3]; 3]) -> Polyhedron {
        let rows: Vec<Vec3> = m
            .iter()
            .map(|r| Vec3(r.clone().map(Real::exact)))
            .collect();
        Polyhedron {
            vertices: self
                .vertices
                .iter()
                .map(|v| Vec3([rows[0].dot(v), rows[1].dot(v), rows[2].dot(v)]))
                .collect(),
            faces: self.faces.clone(),
            labels: self.labels.clone(),
        }
    }

    /// Mean of all vertices.
    pub fn vertex_centroid(&self) -> Vec3 {
        centroid(&self.vertices)
    }

    /// Centre of mass of the enclosed solid, uniform density. Assumes a
    /// closed, consistently oriented surface.
    pub fn volume_centroid(&self) -> Vec3 {
        let mut volume = Real::zero();
        let mut moment = Vec3::zero();
        for face in &self.faces {
            let a = &self.vertices[face[0]];
            for w in face[1..].windows(2) {
                let b = &self.vertices[w[0]];
                let c = &self.vertices[w[1]];
                // six times the signed volume of the tetrahedron (origin, a, b, c)
                let v6 = a.dot(&b.cross(c));
                let sum = &(a + b) + c;
                moment = &moment + &sum.scale(&v6);
                volume = &volume + &v6;
            }
        }
        // Σ v6·(a+b+c)/4 over Σ v6
        moment.div(&(&volume * &Real::from_int(4)))
    }
}

pub(crate) fn cycle_pairs(face: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    face.iter()
        .enumerate()
        .map(move |(i, &a)| (a, face[(i + 1) % face.len()]))
}

/// Edges, face adjacency and vertex-face incidence of a closed oriented mesh.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    /// Undirected edges `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// For each edge, the face traversing it `a → b` and the one traversing `b → a`.
    pub edge_faces: Vec<[usize; 2]>,
    /// Faces sharing an edge with each face, sorted.
    pub face_adjacency: Vec<Vec<usize>>,
    /// Faces incident to each vertex, sorted.
    pub vertex_faces: Vec<Vec<usize>>,
}

impl Topology {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

pub fn derive_topology(p: &Polyhedron) -> Result<Topology, MeshError> {
    // undirected edge → faces with the direction each one uses
    let mut uses: BTreeMap<(usize, usize), Vec<(usize, bool)>> = BTreeMap::new();
    for (f, face) in p.faces.iter().enumerate() {
        for (a, b) in cycle_pairs(face) {
            uses.entry((a.min(b), a.max(b)))
                .or_default()
                .push((f, a < b));
        }
    }
    let mut edges = Vec::with_capacity(uses.len());
    let mut edge_faces = Vec::with_capacity(uses.len());
    let mut face_adjacency = vec![Vec::new(); p.faces.len()];
    for ((a, b), list) in &uses {
        if list.len() != 2 {
            return Err(MeshError::NonManifoldEdge {
                a: *a,
                b: *b,
                count: list.len(),
            });
        }
        let (f, f_fwd) = list[0];
        let (g, g_fwd) = list[1];
        if f_fwd == g_fwd {
            return Err(MeshError::OrientationMismatch { a: *a, b: *b, f, g });
        }
        edges.push((*a, *b));
        edge_faces.push(if f_fwd { [f, g] } else { [g, f] });
        face_adjacency[f].push(g);
        face_adjacency[g].push(f);
    }
    for adj in &mut face_adjacency {
        adj.sort_unstable();
        adj.dedup();
    }
    let mut vertex_faces = vec![Vec::new(); p.vertices.len()];
    for (f, face) in p.faces.iter().enumerate() {
        for &v in face {
            vertex_faces[v].push(f);
        }
    }
    Ok(Topology {
        edges,
        edge_faces,
        face_adjacency,
        vertex_faces,
    })
}

/// Centroid and outward normal of one face.
#[derive(Clone, Debug)]
pub struct FaceFrame {
    pub centroid: Vec3,
    /// Newell normal, twice the face area in length.
    pub normal: Vec3,
    pub unit_normal: Vec3,
}

pub fn face_frame(p: &Polyhedron, f: usize) -> Result<FaceFrame, MeshError> {
    face_frame_with(p, f, &PrecisionPolicy::default())
}

pub(crate) fn face_frame_with(
    p: &Polyhedron,
    f: usize,
    policy: &PrecisionPolicy,
) -> Result<FaceFrame, MeshError> {
    let face = p.faces.get(f).ok_or(MeshError::NoSuchFace(f))?;
    let pts = p.face_points(f);
    let mut normal = Vec3::zero();
    for (a, b) in cycle_pairs(face) {
        normal = &normal + &p.vertices[a].cross(&p.vertices[b]);
    }
    let len2 = normal.norm_squared();
    match certify(&len2, policy)?.verdict {
        SignVerdict::Positive => {}
        _ => return Err(MeshError::DegenerateFace(f)),
    }
    let unit_normal = normal.div(&len2.sqrt());
    Ok(FaceFrame {
        centroid: centroid(&pts),
        normal,
        unit_normal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> Polyhedron {
        Polyhedron::new(
            vec![
                Vec3::from_ints(1, 1, 1),
                Vec3::from_ints(1, -1, -1),
                Vec3::from_ints(-1, 1, -1),
                Vec3::from_ints(-1, -1, 1),
            ],
            vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]],
        )
        .unwrap()
    }

    #[test]
    fn tetrahedron_topology() {
        let t = derive_topology(&tetra()).unwrap();
        assert_eq!(t.edge_count(), 6);
        for (f, adj) in t.face_adjacency.iter().enumerate() {
            let others: Vec<usize> = (0..4).filter(|&g| g != f).collect();
            assert_eq!(adj, &others);
        }
        assert_eq!(tetra().euler_characteristic(), 2);
    }

    #[test]
    fn orientation_mismatch_detected() {
        let mut p = tetra();
        p.faces[3] = vec![1, 2, 3];
        assert!(matches!(
            derive_topology(&p),
            Err(MeshError::OrientationMismatch { .. })
        ));
    }

    #[test]
    fn open_surface_is_non_manifold() {
        let mut p = tetra();
        p.faces.pop();
        p.labels.pop();
        assert!(matches!(
            derive_topology(&p),
            Err(MeshError::NonManifoldEdge { count: 1, .. })
        ));
    }

    #[test]
    fn bad_faces_rejected() {
        let v = vec![Vec3::from_ints(0, 0, 0); 3];
        assert_eq!(
            Polyhedron::new(v.clone(), vec![vec![0, 1]]).unwrap_err(),
            MeshError::ShortFace { face: 0 }
        );
        assert_eq!(
            Polyhedron::new(v.clone(), vec![vec![0, 1, 1]]).unwrap_err(),
            MeshError::ShortFace { face: 0 }
        );
        assert_eq!(
            Polyhedron::new(v, vec![vec![0, 1, 7]]).unwrap_err(),
            MeshError::IndexOutOfRange {
                face: 0,
                index: 7,
                count: 3
            }
        );
    }

    #[test]
    fn octahedron_face_frame() {
        let p = Polyhedron::new(
            vec![
                Vec3::from_ints(1, 0, 0),
                Vec3::from_ints(0, 1, 0),
                Vec3::from_ints(0, 0, 1),
            ],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        let fr = face_frame(&p, 0).unwrap();
        let third = ExactQ5::ratio(1, 3);
        assert_eq!(fr.centroid.as_exact().unwrap(), [third.clone(), third.clone(), third]);
        // (1,1,1)/√3: unit_normal·(1,1,1) = √3 and unit length
        let ones = Vec3::from_ints(1, 1, 1);
        let d = fr.unit_normal.dot(&ones);
        assert!((d.approx() - 3f64.sqrt()).abs() < 1e-15);
        let len = fr.unit_normal.norm_squared().eval(64).unwrap();
        assert!(len.contains(&num_rational::BigRational::from_integer(1.into())));
    }

    #[test]
    fn degenerate_face() {
        let p = Polyhedron::new(
            vec![
                Vec3::from_ints(0, 0, 0),
                Vec3::from_ints(1, 1, 1),
                Vec3::from_ints(2, 2, 2),
            ],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        assert_eq!(face_frame(&p, 0).unwrap_err(), MeshError::DegenerateFace(0));
    }
}
