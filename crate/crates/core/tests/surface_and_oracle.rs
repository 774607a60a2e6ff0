use tetra_geodesic::oracle::{self, initial_directions, validate_geodesic};
use tetra_geodesic::planar::{PlanarPoint, SQRT3};
use tetra_geodesic::surface::{
    enumerate_unfoldings, flatten, make_point, parse_point, reduce_to_canonical, Edge, Face, Isometry, Stratum,
    SurfacePoint, Vertex,
};
use tetra_geodesic::Error;

fn pt(s: &str) -> SurfacePoint {
    parse_point(s).unwrap()
}

#[test]
fn point_literals() {
    assert_eq!(make_point(Face::ABC, [1.0, 0.0, 0.0]).unwrap(), SurfacePoint::vertex(Vertex::A));
    assert_eq!(pt("abc:0.333333333333333333,0.333333333333333333,0.333333333333333333"), pt("centroid:abc"));
    assert!(matches!(make_point(Face::ABC, [0.5, 0.6, 0.1]), Err(Error::BadSum(_))));
    assert_eq!(pt("abc:0.5,0,0.5"), pt("acd:0.5,0.5,0"));
    assert_eq!(pt("abc:0.2,0.5,0.3"), make_point(Face::ABC, [0.2, 0.5, 0.3]).unwrap());
    assert_eq!(pt("bcd:0,0,1").face, Face::ABD);
    assert!(matches!(parse_point("abc:0.5,0.5"), Err(Error::ParsePoint(_))));
}

#[test]
fn isometry_examples() {
    let p = pt("abc:0.2,0.5,0.3");
    assert_eq!(Isometry::identity().apply(&p), p);
    let swap = Isometry::swap(Vertex::B, Vertex::C);
    assert_eq!(swap.apply(&pt("centroid:abc")), pt("centroid:abc"));
    assert_eq!(swap.apply(&p), pt("abc:0.2,0.3,0.5"));
}

#[test]
fn canonical_examples() {
    let p = Stratum::point(0.25, 0.5);
    let c = reduce_to_canonical(&p);
    assert_eq!(c.g, Isometry::identity());
    assert_eq!(c.stratum, Stratum::S0Interior);
    assert!((c.x - 0.25).abs() < 1e-15 && (c.alpha - 0.5).abs() < 1e-15);
    let m = reduce_to_canonical(&pt("mid:ac"));
    assert_eq!(m.stratum, Stratum::S1EdgeAM);
    assert!((m.x - 0.5).abs() < 1e-15 && (m.alpha - 0.5).abs() < 1e-15);
    assert_eq!(reduce_to_canonical(&pt("centroid:abc")).stratum, Stratum::S3Centroid);
    assert_eq!(reduce_to_canonical(&pt("b")).stratum, Stratum::S5VertexA);
}

#[test]
fn unfolding_counts() {
    let counts: Vec<usize> = (0..=4).map(|d| enumerate_unfoldings(Face::ABC, d).unwrap().len()).collect();
    assert_eq!(counts, [1, 4, 10, 22, 46]);
    assert_eq!(enumerate_unfoldings(Face::ABC, 13).unwrap_err(), Error::DepthTooLarge(13));
}

#[test]
fn flattened_vertices() {
    let chains = enumerate_unfoldings(Face::ABC, 1).unwrap();
    let trivial = chains.iter().find(|c| c.crossed_edges.is_empty()).unwrap();
    let a = flatten(&pt("a"), trivial).unwrap();
    assert!(a.dist(PlanarPoint::new(0.0, SQRT3)) < 1e-12);
    let across = |e: &str| chains.iter().find(|c| c.crossed_edges == [Edge::from_name(e).unwrap()]).unwrap();
    assert!(flatten(&pt("d"), across("ac")).unwrap().dist(PlanarPoint::new(2.0, SQRT3)) < 1e-12);
    assert!(flatten(&pt("d"), across("bc")).unwrap().dist(PlanarPoint::new(0.0, -SQRT3)) < 1e-12);
    assert!(matches!(flatten(&pt("centroid:bcd"), trivial), Err(Error::FaceMismatch { .. })));
}

#[test]
fn chart_gluing_on_shared_edges() {
    let chains = enumerate_unfoldings(Face::ABC, 1).unwrap();
    let trivial = chains.iter().find(|c| c.crossed_edges.is_empty()).unwrap();
    for chain in chains.iter().filter(|c| c.crossed_edges.len() == 1) {
        let e = chain.crossed_edges[0];
        for t in [0.1, 0.37, 0.5, 0.9] {
            let q = SurfacePoint::on_edge(e, t);
            assert!(flatten(&q, trivial).unwrap().dist(flatten(&q, chain).unwrap()) <= 1e-12);
        }
    }
}

#[test]
fn oracle_examples() {
    let p = pt("abc:0.2,0.3,0.5");
    let same = oracle::geodesics(&p, &p).unwrap();
    assert_eq!((same.distance, same.multiplicity()), (0.0, 1));
    assert!(validate_geodesic(&same.geodesics[0]));

    assert!((oracle::distance(&pt("a"), &pt("b")).unwrap() - 2.0).abs() <= 1e-12);
    assert!((oracle::distance(&pt("centroid:abc"), &pt("d")).unwrap() - 4.0 / SQRT3).abs() <= 1e-9);
    let mb = oracle::geodesics(&pt("mid:ac"), &pt("mid:bd")).unwrap();
    assert!((mb.distance - 2.0).abs() <= 1e-9);
    assert_eq!(mb.multiplicity(), 4);

    let generic = Stratum::point(0.25, 0.5);
    assert_eq!(oracle::multiplicity(&generic, &pt("centroid:abc")).unwrap(), 1);
    assert!((oracle::distance(&generic, &pt("centroid:abc")).unwrap() - 0.3818813).abs() < 1e-7);
}

#[test]
fn initial_direction_examples() {
    let dirs = initial_directions(&pt("mid:ac"), &pt("mid:bd")).unwrap();
    let mut degrees: Vec<f64> = dirs.iter().map(|d| d.angle().to_degrees()).collect();
    degrees.sort_by(f64::total_cmp);
    for (got, want) in degrees.iter().zip([0.0, 60.0, 180.0, 240.0]) {
        assert!((got - want).abs() < 1e-6, "{degrees:?}");
    }
    let p = pt("abc:0.2,0.3,0.5");
    assert_eq!(initial_directions(&p, &pt("bcd:0.3,0.3,0.4")).unwrap().len(), 1);
    assert_eq!(initial_directions(&p, &p).unwrap_err(), Error::SamePoint);
}

#[test]
fn validation_rejects_tampering() {
    let set = oracle::geodesics(&pt("abc:0.6,0.3,0.1"), &pt("bcd:0.2,0.2,0.6")).unwrap();
    let g = &set.geodesics[0];
    assert!(!g.crossings.is_empty());
    assert!(validate_geodesic(g));
    let mut longer = g.clone();
    longer.length += 1e-3;
    assert!(!validate_geodesic(&longer));
    let mut dropped = g.clone();
    dropped.crossings.remove(0);
    assert!(!validate_geodesic(&dropped));
}
