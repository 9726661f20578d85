use std::collections::BTreeMap;

use elevatum_core::mesh::MeshError;
use elevatum_core::scalar::certify;
use elevatum_core::vector::{exact_cross, exact_dot, exact_sub, ExactVec3};
use elevatum_core::{
    build_seed, derive_topology, elevate, face_frame, list_seeds, Dyadic, ExactQ5, HeightRule, Polyhedron,
    PrecisionPolicy, Real, SeedId, SignVerdict, Vec3,
};

fn exact(p: &Polyhedron) -> Vec<ExactVec3> {
    p.exact_vertices().expect("exact seed")
}

fn edge_squared(id: SeedId) -> ExactQ5 {
    match id {
        SeedId::Tetrahedron | SeedId::Octahedron | SeedId::Cuboctahedron => ExactQ5::from_int(2),
        _ => ExactQ5::one(),
    }
}

fn certified(x: &Real) -> SignVerdict {
    certify(x, &PrecisionPolicy::default()).unwrap().verdict
}

/// Six times the signed volume enclosed by `p`.
fn six_volume(p: &Polyhedron) -> Real {
    let mut total = Real::zero();
    for face in p.faces() {
        let a = &p.vertices()[face[0]];
        for w in face[1..].windows(2) {
            let (b, c) = (&p.vertices()[w[0]], &p.vertices()[w[1]]);
            total = &total + &a.dot(&b.cross(c));
        }
    }
    total
}

#[test]
fn catalog_counts() {
    let expected = [
        (SeedId::Tetrahedron, 4, 6, 4, vec![(3, 4)]),
        (SeedId::Cube, 8, 12, 6, vec![(4, 6)]),
        (SeedId::Octahedron, 6, 12, 8, vec![(3, 8)]),
        (SeedId::Icosahedron, 12, 30, 20, vec![(3, 20)]),
        (SeedId::Dodecahedron, 20, 30, 12, vec![(5, 12)]),
        (SeedId::Cuboctahedron, 12, 24, 14, vec![(3, 8), (4, 6)]),
        (SeedId::Icosidodecahedron, 30, 60, 32, vec![(3, 20), (5, 12)]),
        (SeedId::TruncatedDodecahedron, 60, 90, 32, vec![(3, 20), (10, 12)]),
    ];
    let listed = list_seeds();
    assert_eq!(listed.len(), expected.len());
    for (s, (id, v, e, f, ar)) in listed.iter().zip(expected) {
        assert_eq!(s.id, id);
        assert_eq!((s.vertices, s.edges, s.faces), (v, e, f), "{id}");
        assert_eq!(s.face_arities, ar.into_iter().collect::<BTreeMap<_, _>>(), "{id}");
        assert_eq!(s.edge_squared, edge_squared(id).to_string());
        let p = build_seed(id);
        assert_eq!((p.vertex_count(), p.edge_count(), p.face_count()), (v, e, f));
    }
    assert_eq!(list_seeds(), listed);
}

#[test]
fn seed_names_round_trip() {
    for id in SeedId::ALL {
        assert_eq!(id.name().parse::<SeedId>().unwrap(), id);
    }
    assert!("rhombicuboctahedron".parse::<SeedId>().is_err());
}

#[test]
fn every_edge_has_the_canonical_length() {
    for id in SeedId::ALL {
        let p = build_seed(id);
        let v = exact(&p);
        let topo = derive_topology(&p).unwrap();
        for &(a, b) in &topo.edges {
            let d = exact_sub(&v[a], &v[b]);
            assert_eq!(exact_dot(&d, &d), edge_squared(id), "{id} edge {a}-{b}");
        }
    }
}

#[test]
fn seeds_are_closed_oriented_and_centred() {
    for id in SeedId::ALL {
        let p = build_seed(id);
        assert_eq!(p.euler_characteristic(), 2, "{id}");
        let topo = derive_topology(&p).unwrap();
        assert_eq!(topo.edge_count(), p.edge_count());
        let v = exact(&p);
        let sum = v.iter().fold([ExactQ5::zero(), ExactQ5::zero(), ExactQ5::zero()], |acc, x| {
            [&acc[0] + &x[0], &acc[1] + &x[1], &acc[2] + &x[2]]
        });
        assert!(sum.iter().all(ExactQ5::is_zero), "{id} not centred");
        // vertices sorted by exact (x, y, z)
        assert!(v.windows(2).all(|w| elevatum_core::vector::exact_cmp(&w[0], &w[1]).is_lt()));
        assert_eq!(certified(&six_volume(&p)), SignVerdict::Positive, "{id}");
    }
}

#[test]
fn faces_are_planar_convex_and_outward() {
    for id in SeedId::ALL {
        let p = build_seed(id);
        let v = exact(&p);
        for (f, face) in p.faces().iter().enumerate() {
            let n = exact_cross(&exact_sub(&v[face[1]], &v[face[0]]), &exact_sub(&v[face[2]], &v[face[0]]));
            let d = exact_dot(&n, &v[face[0]]);
            assert!(d.signum() > 0, "{id} face {f} not outward");
            for (i, x) in v.iter().enumerate() {
                let s = exact_dot(&n, x) - &d;
                if face.contains(&i) {
                    assert!(s.is_zero(), "{id} face {f} not planar");
                } else {
                    assert!(s.signum() < 0, "{id} vertex {i} outside face {f}");
                }
            }
            // starts at its smallest index
            assert_eq!(face[0], *face.iter().min().unwrap());
        }
        let keys: Vec<(usize, &Vec<usize>)> = p.faces().iter().map(|f| (f.len(), f)).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{id} face order");
    }
}

#[test]
fn icosidodecahedron_circumradius_is_phi() {
    let p = build_seed(SeedId::Icosidodecahedron);
    let phi2 = ExactQ5::phi().square();
    for x in exact(&p) {
        assert_eq!(exact_dot(&x, &x), phi2);
    }
}

#[test]
fn adjacency() {
    let p = build_seed(SeedId::Icosidodecahedron);
    let topo = derive_topology(&p).unwrap();
    for (f, face) in p.faces().iter().enumerate() {
        let adj = &topo.face_adjacency[f];
        let other = if face.len() == 5 { 3 } else { 5 };
        assert_eq!(adj.len(), face.len());
        assert!(adj.iter().all(|&g| p.faces()[g].len() == other));
    }
    for vf in &topo.vertex_faces {
        assert_eq!(vf.len(), 4);
    }

    let oct = build_seed(SeedId::Octahedron);
    let topo = derive_topology(&oct).unwrap();
    assert_eq!(topo.edges.len(), 12);
    for (&(a, b), [f, g]) in topo.edges.iter().zip(&topo.edge_faces) {
        assert_ne!(f, g);
        assert!(oct.faces()[*f].contains(&a) && oct.faces()[*f].contains(&b));
        assert!(oct.faces()[*g].contains(&a) && oct.faces()[*g].contains(&b));
    }
}

#[test]
fn topology_rejects_bad_meshes() {
    let v = vec![
        Vec3::from_ints(0, 0, 0),
        Vec3::from_ints(1, 0, 0),
        Vec3::from_ints(0, 1, 0),
        Vec3::from_ints(0, 0, 1),
    ];
    let open = Polyhedron::new(v.clone(), vec![vec![0, 2, 1], vec![0, 1, 3], vec![1, 2, 3]]).unwrap();
    assert!(matches!(derive_topology(&open), Err(MeshError::NonManifoldEdge { .. })));
    let flipped =
        Polyhedron::new(v.clone(), vec![vec![0, 1, 2], vec![0, 1, 3], vec![1, 2, 3], vec![0, 3, 2]]).unwrap();
    assert!(matches!(derive_topology(&flipped), Err(MeshError::OrientationMismatch { .. })));
    assert!(matches!(Polyhedron::new(v.clone(), vec![vec![0, 1]]), Err(MeshError::ShortFace { .. })));
    assert!(matches!(
        Polyhedron::new(v, vec![vec![0, 1, 9]]),
        Err(MeshError::IndexOutOfRange { .. })
    ));
}

#[test]
fn face_frames_are_unit_and_outward() {
    let p = build_seed(SeedId::Dodecahedron);
    for f in 0..p.face_count() {
        let fr = face_frame(&p, f).unwrap();
        let one = &fr.unit_normal.norm_squared() - &Real::one();
        assert!(!certified(&one).is_certified_nonzero());
        assert_eq!(certified(&fr.unit_normal.dot(&fr.centroid)), SignVerdict::Positive);
    }
    assert!(matches!(face_frame(&p, 99), Err(MeshError::NoSuchFace(99))));
}

#[test]
fn equilateral_elevation_of_the_icosidodecahedron() {
    let base = build_seed(SeedId::Icosidodecahedron);
    let e = elevate(&base, &HeightRule::Equilateral).unwrap();
    let at_128 = PrecisionPolicy::new(128, 128).unwrap();
    for f in 0..base.face_count() {
        let apex = e.apex(f);
        for v in base.face_points(f) {
            let err = &(apex - &v).norm_squared() - &Real::one();
            // pentagon apexes fold into the exact layer; triangle apexes do not
            match certify(&err, &at_128).unwrap().verdict {
                SignVerdict::Undecided { final_width, .. } => assert!(final_width < Dyadic::pow2(-100)),
                SignVerdict::ExactZero => assert_eq!(base.faces()[f].len(), 5),
                other => panic!("lateral edge not unit: {other:?}"),
            }
            for bits in [16, 64, 256] {
                assert!((apex - &v).norm_squared().eval(bits).unwrap().contains_dyadic(&Dyadic::from_int(1)));
            }
        }
    }
    let mesh = e.mesh();
    assert_eq!((mesh.vertex_count(), mesh.edge_count(), mesh.face_count()), (62, 180, 120));
    assert_eq!(mesh.euler_characteristic(), 2);
    derive_topology(&mesh).unwrap();
    assert_eq!(e.apex_vertex(0), 30);
    assert_eq!(mesh.labels()[0].as_deref(), Some("pyramid 0 (3-gon) side 0"));
    let classes = base.arity_histogram();
    assert_eq!((classes[&5], classes[&3]), (12, 20));
}

#[test]
fn equilateral_heights_match_closed_forms() {
    let base = build_seed(SeedId::Icosidodecahedron);
    let e = elevate(&base, &HeightRule::Equilateral).unwrap();
    let tri = Real::ratio(2, 3).sqrt();
    let pent = Real::exact(ExactQ5::from_parts(1, 2, -1, 10)).sqrt();
    let explicit = HeightRule::Explicit(BTreeMap::from([(3, tri.clone()), (5, pent.clone())]));
    let x = elevate(&base, &explicit).unwrap();
    for f in 0..base.face_count() {
        for k in 0..3 {
            let a = e.apex(f).0[k].eval(128).unwrap();
            let b = x.apex(f).0[k].eval(128).unwrap();
            assert!(a.intersect(&b).is_some(), "face {f} axis {k}");
        }
    }
    let h = e.heights();
    assert!(h[&3].eval(128).unwrap().intersect(&tri.eval(128).unwrap()).is_some());
    assert!(h[&5].eval(128).unwrap().intersect(&pent.eval(128).unwrap()).is_some());
}

#[test]
fn zero_rule_places_apexes_at_centroids() {
    let base = build_seed(SeedId::Cube);
    let e = elevate(&base, &HeightRule::Zero).unwrap();
    for f in 0..base.face_count() {
        let c = &e.frame(f).centroid;
        assert_eq!(e.apex(f).as_exact().unwrap(), c.as_exact().unwrap());
    }
}

#[test]
fn apex_height_is_monotone() {
    let base = build_seed(SeedId::Icosahedron);
    let apex = |h: Real| {
        let e = elevate(&base, &HeightRule::Explicit(BTreeMap::from([(3, h)]))).unwrap();
        e.apex(0).clone()
    };
    let heights = [Real::zero(), Real::ratio(3, 10), Real::ratio(6, 10), Real::ratio(2, 3).sqrt()];
    let dist: Vec<Real> = heights.iter().map(|h| apex(h.clone()).norm_squared()).collect();
    for w in dist.windows(2) {
        assert_eq!(certified(&(&w[1] - &w[0])), SignVerdict::Positive);
    }
    // the height is measured along the unit normal, in edge units
    let e = elevate(&base, &HeightRule::Explicit(BTreeMap::from([(3, Real::ratio(3, 10))]))).unwrap();
    let fr = e.frame(0);
    let along = (e.apex(0) - &fr.centroid).dot(&fr.unit_normal);
    assert!(along.eval(128).unwrap().contains(&num_rational::BigRational::new(3.into(), 10.into())));
}

#[test]
fn small_seed_frames_and_adjacency() {
    let cube = build_seed(SeedId::Cube);
    let topo = derive_topology(&cube).unwrap();
    assert!(topo.face_adjacency.iter().all(|a| a.len() == 4));
    let top = (0..cube.face_count())
        .find(|&f| cube.face_points(f).iter().all(|v| v.z().as_exact().unwrap().signum() > 0))
        .unwrap();
    let n = face_frame(&cube, top).unwrap().unit_normal.as_exact().expect("exact normal");
    assert_eq!(n, [ExactQ5::zero(), ExactQ5::zero(), ExactQ5::one()]);

    let tet = build_seed(SeedId::Tetrahedron);
    let topo = derive_topology(&tet).unwrap();
    assert_eq!(topo.edges.len(), 6);
    for (f, adj) in topo.face_adjacency.iter().enumerate() {
        assert_eq!(adj.len(), 3);
        assert!(!adj.contains(&f));
    }

    // octahedron face in the positive octant: centroid (k, k, k), normal along (1, 1, 1)
    let oct = build_seed(SeedId::Octahedron);
    let f = (0..oct.face_count())
        .find(|&f| {
            let fr = face_frame(&oct, f).unwrap();
            fr.centroid.as_exact().unwrap().iter().all(|c| c.signum() > 0)
        })
        .unwrap();
    let fr = face_frame(&oct, f).unwrap();
    let c = fr.centroid.as_exact().unwrap();
    assert!(c[0] == c[1] && c[1] == c[2]);
    let u = &fr.unit_normal;
    for k in 0..3 {
        let d = &(&u.0[k] * &u.0[k]) - &Real::ratio(1, 3);
        assert!(!certified(&d).is_certified_nonzero());
        assert_eq!(certified(&u.0[k]), SignVerdict::Positive);
    }

    let ico = build_seed(SeedId::Icosidodecahedron);
    for f in ico.faces_of_arity(5) {
        let fr = face_frame(&ico, f).unwrap();
        let v = certify(&fr.centroid.dot(&fr.unit_normal), &PrecisionPolicy::new(64, 64).unwrap()).unwrap();
        assert_eq!(v.verdict, SignVerdict::Positive);
    }
}

#[test]
fn equilateral_infeasible_on_decagons() {
    let base = build_seed(SeedId::TruncatedDodecahedron);
    assert_eq!(
        elevate(&base, &HeightRule::Equilateral).unwrap_err(),
        MeshError::EquilateralInfeasible(10)
    );
}

#[test]
fn explicit_rule_errors() {
    let base = build_seed(SeedId::Cuboctahedron);
    let only_tri = HeightRule::Explicit(BTreeMap::from([(3, Real::one())]));
    assert_eq!(elevate(&base, &only_tri).unwrap_err(), MeshError::MissingHeight(4));
    let negative = HeightRule::Explicit(BTreeMap::from([(3, Real::one()), (4, Real::from_int(-1))]));
    assert_eq!(elevate(&base, &negative).unwrap_err(), MeshError::NegativeHeight(4));
}

#[test]
fn all_feasible_elevations_are_closed_and_coherent() {
    for id in SeedId::ALL {
        let base = build_seed(id);
        let mut rules = vec![HeightRule::Explicit(
            base.arity_histogram().into_keys().map(|n| (n, Real::ratio(1, 2))).collect(),
        )];
        if base.arity_histogram().keys().all(|&n| n <= 5) {
            rules.push(HeightRule::Equilateral);
        }
        for rule in rules {
            let e = elevate(&base, &rule).unwrap();
            let m = e.mesh();
            let n_lat: usize = base.faces().iter().map(Vec::len).sum();
            assert_eq!(m.vertex_count(), base.vertex_count() + base.face_count());
            assert_eq!(m.face_count(), n_lat);
            assert_eq!(m.edge_count(), base.edge_count() + n_lat);
            assert_eq!(m.euler_characteristic(), 2, "{id} {}", rule.mode_name());
            derive_topology(&m).unwrap();
            assert_eq!(certified(&six_volume(&m)), SignVerdict::Positive);
        }
    }
}
