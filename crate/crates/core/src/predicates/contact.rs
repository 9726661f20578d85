//! Which vertices a solid rests on when pushed along a direction, and
//! whether it balances there.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::mesh::Polyhedron;
use crate::scalar::{certify, Interval, PrecisionPolicy, Real, SignVerdict};
use crate::vector::Vec3;

use super::PredicateError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Yes,
    No,
    Marginal,
}

#[derive(Clone, Debug)]
pub struct ContactReport {
    pub direction: Vec3,
    /// Vertices attaining the maximal support value, sorted. Includes
    /// the marginal ones.
    pub touching: Vec<usize>,
    /// Touching vertices whose tie with the maximum could not be certified.
    pub marginal: Vec<usize>,
    /// Support deficit `max − direction·v` for every vertex.
    pub margins: BTreeMap<usize, Interval>,
    pub stable: Stability,
}

/// Contact set and static balance for `mesh` resting on a support plane
/// orthogonal to `direction` (the plane lies on the `direction` side).
pub fn contact_and_stability(
    mesh: &Polyhedron,
    direction: &Vec3,
    policy: &PrecisionPolicy,
) -> Result<ContactReport, PredicateError> {
    if !certify(&direction.norm_squared(), policy)?.verdict.is_certified_nonzero() {
        return Err(PredicateError::ZeroDirection);
    }
    let support: Vec<Real> = mesh.vertices().iter().map(|v| direction.dot(v)).collect();

    // start from the float favourite; any certified larger value replaces it
    let mut best = (0..support.len())
        .max_by(|&a, &b| support[a].approx().total_cmp(&support[b].approx()))
        .expect("mesh has vertices");
    let (margins, touching, marginal) = 'search: loop {
        let mut margins = BTreeMap::new();
        let mut touching = vec![best];
        let mut marginal = Vec::new();
        for j in 0..support.len() {
            if j == best {
                continue;
            }
            let deficit = &support[best] - &support[j];
            let c = certify(&deficit, policy)?;
            match c.verdict {
                SignVerdict::Negative => {
                    best = j;
                    continue 'search;
                }
                SignVerdict::Positive => {}
                SignVerdict::ExactZero => touching.push(j),
                SignVerdict::Undecided { .. } => {
                    touching.push(j);
                    marginal.push(j);
                }
            }
            margins.insert(j, c.interval);
        }
        margins.insert(best, Interval::point(crate::scalar::Dyadic::zero()));
        touching.sort_unstable();
        break (margins, touching, marginal);
    };

    let stable = if touching.len() <= 2 {
        Stability::No
    } else if !marginal.is_empty() {
        Stability::Marginal
    } else {
        balance(mesh, direction, &touching, policy)?
    };
    Ok(ContactReport {
        direction: direction.clone(),
        touching,
        marginal,
        margins,
        stable,
    })
}

/// Is the centre of mass strictly inside the contact polygon, seen along
/// `direction`?
///
/// Not strictly inside exactly when some line through the centre and a
/// contact point has every contact point on one closed side; that test
/// needs no ordering of the polygon.
fn balance(
    mesh: &Polyhedron,
    direction: &Vec3,
    touching: &[usize],
    policy: &PrecisionPolicy,
) -> Result<Stability, PredicateError> {
    let c = mass_centre(mesh, policy);
    let pts: Vec<&Vec3> = touching.iter().map(|&i| &mesh.vertices()[i]).collect();
    let mut undecided = false;
    for s in &pts {
        let ds = *s - &c;
        let (mut pos, mut neg, mut unknown) = (false, false, false);
        for t in &pts {
            let o = ds.cross(&(*t - &c)).dot(direction);
            match certify(&o, policy)?.verdict {
                SignVerdict::Positive => pos = true,
                SignVerdict::Negative => neg = true,
                SignVerdict::ExactZero => {}
                SignVerdict::Undecided { .. } => unknown = true,
            }
        }
        if pos && neg {
            continue;
        }
        if !unknown {
            return Ok(Stability::No);
        }
        undecided = true;
    }
    Ok(if undecided {
        Stability::Marginal
    } else {
        Stability::Yes
    })
}

fn mass_centre(mesh: &Polyhedron, policy: &PrecisionPolicy) -> Vec3 {
    let c = mesh.volume_centroid();
    let ok = c.0.iter().all(|x| x.eval_escalating(policy).is_ok());
    if ok {
        c
    } else {
        mesh.vertex_centroid()
    }
}
