//! Seed solids with exact Q(√5) coordinates.
//!
//! Only vertex coordinates are tabulated. Edges are the closest vertex
//! pairs, and faces come from an exact support-plane scan: a plane through
//! three vertices, two of them joined to the third by edges, is a face plane
//! when every other vertex lies strictly on one side of it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::mesh::Polyhedron;
use crate::scalar::ExactQ5;
use crate::vector::{exact_cmp, exact_cross, exact_dot, exact_is_zero, exact_scale, exact_sub, ExactVec3, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedId {
    Tetrahedron,
    Cube,
    Octahedron,
    Icosahedron,
    Dodecahedron,
    Cuboctahedron,
    Icosidodecahedron,
    TruncatedDodecahedron,
}

impl SeedId {
    pub const ALL: [SeedId; 8] = [
        SeedId::Tetrahedron,
        SeedId::Cube,
        SeedId::Octahedron,
        SeedId::Icosahedron,
        SeedId::Dodecahedron,
        SeedId::Cuboctahedron,
        SeedId::Icosidodecahedron,
        SeedId::TruncatedDodecahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeedId::Tetrahedron => "tetrahedron",
            SeedId::Cube => "cube",
            SeedId::Octahedron => "octahedron",
            SeedId::Icosahedron => "icosahedron",
            SeedId::Dodecahedron => "dodecahedron",
            SeedId::Cuboctahedron => "cuboctahedron",
            SeedId::Icosidodecahedron => "icosidodecahedron",
            SeedId::TruncatedDodecahedron => "truncated_dodecahedron",
        }
    }
}

impl fmt::Display for SeedId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown seed `{0}`")]
pub struct UnknownSeed(pub String);

impl FromStr for SeedId {
    type Err = UnknownSeed;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SeedId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| UnknownSeed(s.to_owned()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedSummary {
    pub id: SeedId,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// Face count per arity.
    pub face_arities: BTreeMap<usize, usize>,
    /// Exact squared edge length (1 unless the field cannot express it).
    pub edge_squared: String,
}

pub fn list_seeds() -> Vec<SeedSummary> {
    SeedId::ALL
        .into_iter()
        .map(|id| {
            let p = build_seed(id);
            let edge_squared = exact_edge_squared(&p).to_string();
            SeedSummary {
                id,
                vertices: p.vertex_count(),
                edges: p.edge_count(),
                faces: p.face_count(),
                face_arities: p.arity_histogram(),
                edge_squared,
            }
        })
        .collect()
}

fn exact_edge_squared(p: &Polyhedron) -> ExactQ5 {
    let v = p.exact_vertices().expect("seeds are exact");
    let f = &p.faces()[0];
    let d = exact_sub(&v[f[1]], &v[f[0]]);
    exact_dot(&d, &d)
}

pub fn build_seed(id: SeedId) -> Polyhedron {
    let raw = raw_vertices(id);
    let verts = canonical_scale(raw);
    let edges = closest_pairs(&verts);
    let faces = support_faces(&verts, &edges);
    Polyhedron::new(verts.iter().map(Vec3::from_exact).collect(), faces)
        .expect("support-plane faces are well formed")
}

fn q(a: i64, b: i64) -> ExactQ5 {
    ExactQ5::ratio(a, b)
}

fn raw_vertices(id: SeedId) -> Vec<ExactVec3> {
    let phi = ExactQ5::phi();
    let phi2 = phi.square();
    let inv_phi = &phi - &ExactQ5::one();
    let zero = ExactQ5::zero;
    let one = ExactQ5::one;
    match id {
        SeedId::Tetrahedron => [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
            .into_iter()
            .map(|p| p.map(ExactQ5::from_int))
            .collect(),
        SeedId::Cube => signed_cyclic(&[[q(1, 2), q(1, 2), q(1, 2)]]),
        SeedId::Octahedron => signed_cyclic(&[[one(), zero(), zero()]]),
        SeedId::Icosahedron => signed_cyclic(&[[zero(), one(), phi.clone()]]),
        SeedId::Dodecahedron => signed_cyclic(&[
            [one(), one(), one()],
            [zero(), inv_phi.clone(), phi.clone()],
        ]),
        SeedId::Cuboctahedron => signed_cyclic(&[[one(), one(), zero()]]),
        SeedId::Icosidodecahedron => signed_cyclic(&[
            [zero(), zero(), phi.clone()],
            [q(1, 2), &phi * &q(1, 2), &phi2 * &q(1, 2)],
        ]),
        SeedId::TruncatedDodecahedron => signed_cyclic(&[
            [zero(), inv_phi.clone(), &phi + &ExactQ5::from_int(2)],
            [inv_phi, phi.clone(), &phi * &ExactQ5::from_int(2)],
            [phi, ExactQ5::from_int(2), phi2],
        ]),
    }
}

/// All sign choices of the nonzero entries, then all cyclic shifts.
fn signed_cyclic(bases: &[ExactVec3]) -> Vec<ExactVec3> {
    let mut out: Vec<ExactVec3> = Vec::new();
    for base in bases {
        for signs in 0..8u8 {
            let p: ExactVec3 = std::array::from_fn(|i| {
                if signs & (1 << i) != 0 {
                    -&base[i]
                } else {
                    base[i].clone()
                }
            });
            for k in 0..3 {
                let r: ExactVec3 = std::array::from_fn(|i| p[(i + k) % 3].clone());
                if !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Scale to unit edge when √(edge²) lies in the field, otherwise to
/// edge² = 2; then sort lexicographically.
fn canonical_scale(mut v: Vec<ExactVec3>) -> Vec<ExactVec3> {
    let e2 = min_distance_squared(&v);
    let factor = match e2.sqrt_exact() {
        Some(e) => e.recip().expect("positive edge"),
        None => (&e2 / &ExactQ5::from_int(2))
            .sqrt_exact()
            .and_then(|e| e.recip().ok())
            .expect("edge² is 2·square for the non-golden seeds"),
    };
    for p in &mut v {
        *p = exact_scale(p, &factor);
    }
    v.sort_by(exact_cmp);
    v
}

fn min_distance_squared(v: &[ExactVec3]) -> ExactQ5 {
    let mut best: Option<ExactQ5> = None;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let d = exact_sub(&v[i], &v[j]);
            let d2 = exact_dot(&d, &d);
            if best.as_ref().map_or(true, |b| d2 < *b) {
                best = Some(d2);
            }
        }
    }
    best.expect("at least two vertices")
}

fn closest_pairs(v: &[ExactVec3]) -> Vec<BTreeSet<usize>> {
    let e2 = min_distance_squared(v);
    let mut adj = vec![BTreeSet::new(); v.len()];
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let d = exact_sub(&v[i], &v[j]);
            if exact_dot(&d, &d) == e2 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

fn support_faces(v: &[ExactVec3], adj: &[BTreeSet<usize>]) -> Vec<Vec<usize>> {
    let mut found: BTreeMap<Vec<usize>, ExactVec3> = BTreeMap::new();
    for (j, nbrs) in adj.iter().enumerate() {
        let nbrs: Vec<usize> = nbrs.iter().copied().collect();
        for (a, &i) in nbrs.iter().enumerate() {
            for &k in &nbrs[a + 1..] {
                let n = exact_cross(&exact_sub(&v[i], &v[j]), &exact_sub(&v[k], &v[j]));
                if exact_is_zero(&n) {
                    continue;
                }
                if let Some((on_plane, outward)) = support_plane(v, &v[j], n) {
                    found.entry(on_plane).or_insert(outward);
                }
            }
        }
    }
    let mut faces: Vec<Vec<usize>> = found
        .into_iter()
        .map(|(members, outward)| face_cycle(v, adj, &members, &outward))
        .collect();
    faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    faces
}

/// Vertices on the plane through `origin` with normal `n`, and the outward
/// normal, if no vertex lies strictly on the outward side.
fn support_plane(v: &[ExactVec3], origin: &ExactVec3, n: ExactVec3) -> Option<(Vec<usize>, ExactVec3)> {
    let mut on = Vec::new();
    let mut side = 0;
    for (idx, p) in v.iter().enumerate() {
        let s = exact_dot(&n, &exact_sub(p, origin)).signum();
        if s == 0 {
            on.push(idx);
        } else if side == 0 {
            side = s;
        } else if side != s {
            return None;
        }
    }
    // everything else is on the `side` half-space, so outward is the other way
    let outward = if side > 0 { n.map(|c| -c) } else { n };
    Some((on, outward))
}

/// Order a face's vertices along its boundary, counterclockwise seen from
/// `outward`, starting at the smallest index.
fn face_cycle(v: &[ExactVec3], adj: &[BTreeSet<usize>], members: &[usize], outward: &ExactVec3) -> Vec<usize> {
    let start = members[0];
    let mut cycle = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = adj[cur]
            .iter()
            .copied()
            .find(|&n| n != prev && members.binary_search(&n).is_ok())
            .expect("face boundary is a cycle");
        if next == start {
            break;
        }
        cycle.push(next);
        prev = cur;
        cur = next;
    }
    debug_assert_eq!(cycle.len(), members.len());
    let turn = exact_cross(&exact_sub(&v[cycle[1]], &v[cycle[0]]), &exact_sub(&v[cycle[2]], &v[cycle[0]]));
    if exact_dot(&turn, outward).signum() < 0 {
        cycle[1..].reverse();
    }
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in SeedId::ALL {
            assert_eq!(id.name().parse::<SeedId>().unwrap(), id);
        }
        assert!("rhombicosidodecahedron".parse::<SeedId>().is_err());
    }

    #[test]
    fn cube_is_unit() {
        let c = build_seed(SeedId::Cube);
        assert_eq!(c.vertex_count(), 8);
        assert_eq!(c.face_count(), 6);
        assert_eq!(exact_edge_squared(&c), ExactQ5::one());
        // first vertex is the lexicographically smallest corner
        assert_eq!(c.exact_vertices().unwrap()[0], [q(-1, 2), q(-1, 2), q(-1, 2)]);
    }

    #[test]
    fn faces_are_canonically_ordered() {
        let p = build_seed(SeedId::Icosidodecahedron);
        let faces = p.faces();
        for w in faces.windows(2) {
            assert!((w[0].len(), &w[0]) < (w[1].len(), &w[1]));
        }
        for f in faces {
            assert_eq!(f[0], *f.iter().min().unwrap());
        }
    }
}
