use curvedkit::geom::Vec3;
use curvedkit::regions::HalfSide;
use curvedkit::scenarios::{build_case, build_counterexample, case_specs, ScenarioName, ScenarioSpec};
use curvedkit::spec::{GeodesicSpec, PointSpec};
use curvedkit::symmetry::{candidate_symmetries, classify, detect, verify, SymmetryKind, DEFAULT_TOL};
use curvedkit::{
    distance, intersect, Cycle, Geometry, IdealPoint, Intersection, IntersectionRegion, Isometry, Membership, Point,
    RegionSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const H: Geometry = Geometry::Hyperbolic;

fn region(k: &RegionSpec, phi: &Isometry, l: &RegionSpec, psi: &Isometry) -> IntersectionRegion {
    match intersect(&k.build().unwrap(), phi, &l.build().unwrap(), psi).unwrap() {
        Intersection::Region(r) => *r,
        other => panic!("expected a region, got {other:?}"),
    }
}

#[test]
fn paracycles_at_one_ideal_point_never_cross() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let at = IdealPoint::at_angle(H, rng.gen_range(0.0..6.3));
        let a = Cycle::paracycle(&at, &Point::polar(H, rng.gen_range(0.0..6.3), rng.gen_range(0.0..2.0))).unwrap();
        let b = Cycle::paracycle(&at, &Point::polar(H, rng.gen_range(0.0..6.3), rng.gen_range(0.0..2.0))).unwrap();
        if let Ok(cp) = a.cycle_points(&b) {
            assert!(cp.points.len() <= 1);
        }
    }
}

/// A paraball and a hyperdomain whose base ends at the paraball's ideal point.
fn shared_ideal_point() -> IntersectionRegion {
    let k = RegionSpec::Paraball {
        ideal_angle: 0.0,
        through: PointSpec::default(),
    };
    let l = RegionSpec::Hyperdomain {
        base: GeodesicSpec::Ideal { ideal: [0.0, 2.2] },
        distance: 0.5,
        side: HalfSide::Near,
    };
    let id = Isometry::identity(H);
    region(&k, &id, &l, &id)
}

#[test]
fn shared_ideal_point_gives_one_finite_and_one_ideal_vertex() {
    let r = shared_ideal_point();
    assert_eq!(r.chains.len(), 1);
    assert_eq!(r.finite_vertices().len(), 1);
    assert_eq!(r.ideal_vertices().len(), 1);
    assert!(r.ideal_vertices()[0].boundary_distance(&IdealPoint::at_angle(H, 0.0)) < 1e-9);
    let axial: Vec<_> = candidate_symmetries(&r)
        .into_iter()
        .filter(|c| classify(c) == SymmetryKind::Axial)
        .collect();
    assert_eq!(axial.len(), 1);
    // the boundary curvatures differ (1 and tanh 0.5), so the bisector is not a symmetry
    assert!(!detect(&r, DEFAULT_TOL).has_nontrivial);
}

#[test]
fn incongruent_hyperdomains_have_no_symmetry() {
    let k = RegionSpec::Hyperdomain {
        base: GeodesicSpec::Ideal { ideal: [0.0, 2.5] },
        distance: 0.3,
        side: HalfSide::Near,
    };
    let l = RegionSpec::Hyperdomain {
        base: GeodesicSpec::Ideal { ideal: [1.2, 4.1] },
        distance: 0.8,
        side: HalfSide::Near,
    };
    let id = Isometry::identity(H);
    let r = region(&k, &id, &l, &id);
    assert!(!detect(&r, DEFAULT_TOL).has_nontrivial);
}

#[test]
fn quadrangle_vertices_and_symmetry() {
    let flat = ScenarioSpec::new(ScenarioName::Quadrangle).with_param("delta", 0.0);
    let c = build_counterexample(&flat, 0).unwrap();
    let r = intersect(&c.k, &c.phi, &c.l, &c.psi).unwrap();
    let r = r.region().unwrap();
    assert_eq!(r.finite_vertices().len(), 4);
    let rep = detect(r, DEFAULT_TOL);
    assert!(rep.is_axially_symmetric && rep.max_residual() < 1e-8);

    let bent = ScenarioSpec::new(ScenarioName::Quadrangle).with_param("delta", 0.05);
    for i in 0..20 {
        let c = build_counterexample(&bent, i).unwrap();
        let r = intersect(&c.k, &c.phi, &c.l, &c.psi).unwrap();
        assert!(!detect(r.region().unwrap(), DEFAULT_TOL).has_nontrivial);
    }
}

#[test]
fn disk_diameters() {
    let e = Geometry::Euclidean;
    let disk = RegionSpec::Ball {
        geometry: e,
        center: PointSpec::default(),
        radius: 1.0,
    };
    let big = RegionSpec::Ball {
        geometry: e,
        center: PointSpec::default(),
        radius: 3.0,
    };
    let id = Isometry::identity(e);
    let whole = region(&disk, &id, &big, &id).diameter(256);
    assert!((whole - 2.0).abs() < 1e-6, "{whole}");

    let r = shared_ideal_point();
    assert_eq!(r.diameter(64), f64::INFINITY);

    // two congruent H² disks: the larger of the vertex chord and the width across
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for &(radius, d) in &[(1.0, 0.6), (0.8, 1.4), (1.5, 2.5)] {
        let ball = RegionSpec::Ball {
            geometry: H,
            center: PointSpec::default(),
            radius,
        };
        let t = Isometry::translation(&Cycle::geodesic(H, std::f64::consts::FRAC_PI_2, 0.0), d).unwrap();
        let lens = region(&ball, &Isometry::identity(H), &ball, &t);
        let half_chord = (f64::cosh(radius) / f64::cosh(d / 2.0)).acosh();
        let exact = (2.0 * half_chord).max(2.0 * radius - d);
        let got = lens.diameter(256);
        assert!((got - exact).abs() < 1e-3, "({radius}, {d}): {got} vs {exact}");
        let inside: Vec<Point> = (0..2000)
            .map(|_| Point::polar(H, rng.gen_range(0.0..6.3), rng.gen_range(0.0..radius)))
            .filter(|p| lens.source_membership(p) != Membership::Exterior)
            .collect();
        for (i, p) in inside.iter().enumerate().take(300) {
            for q in &inside[i + 1..] {
                assert!(distance(p, q).unwrap() <= exact + 1e-9);
            }
        }
    }
}

#[test]
fn wrong_candidates_fail_verification() {
    let e = Geometry::Euclidean;
    let disk = RegionSpec::Ball {
        geometry: e,
        center: PointSpec::default(),
        radius: 1.0,
    };
    let t = Isometry::translation(&Cycle::geodesic(e, 0.0, 0.0), 1.2).unwrap();
    let lens = region(&disk, &Isometry::identity(e), &disk, &t);
    assert_eq!(lens.finite_vertices().len(), 2);
    assert!(verify(&lens, &Isometry::identity(e)).unwrap() < 1e-12);
    let middle = Point::new(e, Vec3::new(0.0, -0.6, 1.0)).unwrap();
    assert!(verify(&lens, &Isometry::point_reflection(&middle)).unwrap() < 1e-9);
    let off = Isometry::reflection(&Cycle::geodesic(e, 0.4, 0.3)).unwrap();
    assert!(verify(&lens, &off).unwrap() > 0.1);
}

#[test]
fn catalog_builds_the_stated_regions() {
    let (a, b) = case_specs(&ScenarioSpec::new(ScenarioName::Thm3)).unwrap();
    for s in [a, b] {
        assert!(matches!(s, RegionSpec::Ball { geometry: Geometry::Spherical, radius, .. } if radius == 0.7));
    }
    let (k, l) = build_case(&ScenarioSpec::new(ScenarioName::Thm6e).with_param("l", 0.4)).unwrap();
    for c in k.components().iter().chain(l.components()) {
        assert!((c.curvature() - 0.4f64.tanh()).abs() < 1e-12);
    }
    assert_eq!(k.components().len() + l.components().len(), 4);
    let spec = ScenarioSpec::new(ScenarioName::Thm6c)
        .with_param("r", 0.3)
        .with_param("d1", 0.61)
        .with_param("d2", 0.8);
    let (_, l) = build_case(&spec).unwrap();
    assert!(l.min_component_distance() >= 0.6 - 1e-8);
}
