use curvedkit::scenarios::{draw, Draw, ScenarioName, ScenarioSpec};
use curvedkit::symmetry::detect;
use curvedkit::{distance, intersect, trig, Cycle, Geometry, Intersection, Isometry, Membership, Point, RegionSpec};
use proptest::prelude::*;

const GEOMETRIES: [Geometry; 3] = [Geometry::Spherical, Geometry::Euclidean, Geometry::Hyperbolic];

fn geometry() -> impl Strategy<Value = Geometry> {
    (0usize..3).prop_map(|i| GEOMETRIES[i])
}

fn point(g: Geometry) -> impl Strategy<Value = Point> {
    (0.0..std::f64::consts::TAU, 0.0..1.4).prop_map(move |(a, d)| Point::polar(g, a, d))
}

type MotionParams = (f64, f64, f64, bool);

fn motion_params() -> impl Strategy<Value = MotionParams> {
    (
        0.0..std::f64::consts::TAU,
        0.0..1.4,
        0.0..std::f64::consts::TAU,
        any::<bool>(),
    )
}

fn motion_from(g: Geometry, (theta, t, a, flip): MotionParams) -> Isometry {
    let m = Isometry::transvection(&Point::polar(g, theta, t))
        .compose(&Isometry::rotation(&Point::origin(g), a))
        .unwrap();
    if flip {
        m.compose(&Isometry::reflection(&Cycle::geodesic(g, a, 0.0)).unwrap())
            .unwrap()
    } else {
        m
    }
}

fn motion(g: Geometry) -> impl Strategy<Value = Isometry> {
    motion_params().prop_map(move |p| motion_from(g, p))
}

fn close(a: &Isometry, b: &Isometry, tol: f64) -> bool {
    a.matrix_distance(b) <= tol * (1.0 + a.matrix().norm().max(b.matrix().norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_laws((g, a, b, c) in geometry().prop_flat_map(|g| (Just(g), motion(g), motion(g), motion(g)))) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(close(&left, &right, 1e-12), "{:?}", g);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity(1e-10));
        prop_assert!(left.validate().is_ok());
    }

    #[test]
    fn motions_preserve_distance((g, m, p, q) in geometry().prop_flat_map(|g| (Just(g), motion(g), point(g), point(g)))) {
        let before = distance(&p, &q).unwrap();
        let after = distance(&m.apply(&p).unwrap(), &m.apply(&q).unwrap()).unwrap();
        prop_assert!((before - after).abs() < 1e-9 * (1.0 + before), "{g:?}: {before} vs {after}");
    }

    #[test]
    fn cycles_are_equivariant(
        (g, m, center, r, t) in geometry().prop_flat_map(|g| (Just(g), motion(g), point(g), 0.1..1.2f64, -3.0..3.0f64))
    ) {
        let c = Cycle::circle(&center, r).unwrap();
        let moved = c.transform(&m).unwrap();
        let image = m.apply(&c.point_at(t)).unwrap();
        prop_assert!(moved.inside_value(&image).abs() < 1e-9, "{:?}", g);
        prop_assert!((moved.curvature() - c.curvature()).abs() < 1e-9 * (1.0 + c.curvature().abs()));
        prop_assert_eq!(std::mem::discriminant(&moved.kind()), std::mem::discriminant(&c.kind()));
    }

    #[test]
    fn cycle_points_lie_on_both(
        (g, a, b, ra, rb) in geometry().prop_flat_map(|g| (Just(g), point(g), point(g), 0.2..1.2f64, 0.2..1.2f64))
    ) {
        let (x, y) = (Cycle::circle(&a, ra).unwrap(), Cycle::circle(&b, rb).unwrap());
        if let Ok(cp) = x.cycle_points(&y) {
            for p in &cp.points {
                prop_assert!(x.inside_value(p).abs() < 1e-9 && y.inside_value(p).abs() < 1e-9, "{:?}", g);
            }
        }
    }

    #[test]
    fn membership_is_equivariant(
        (g, m, p, r) in geometry().prop_flat_map(|g| (Just(g), motion(g), point(g), 0.3..1.2f64))
    ) {
        let region = RegionSpec::Ball { geometry: g, center: Default::default(), radius: r }.build().unwrap();
        let moved = region.transform(&m).unwrap();
        let before = region.contains(&p);
        prop_assume!(before != Membership::Boundary);
        prop_assert_eq!(moved.contains(&m.apply(&p).unwrap()), before);
    }

    #[test]
    fn chord_angle_sign_extension(r in 0.1..2.0f64, c in 0.0..2.0f64, u in -0.99..0.99f64) {
        let l = c + u * r;
        let w = trig::half_central_angle(r, c, l).unwrap();
        let flipped = trig::half_central_angle(r, -c, -l).unwrap();
        prop_assert!((w + flipped - std::f64::consts::PI).abs() < 1e-12);
        let q = trig::solve(r, c, l).unwrap();
        prop_assert!((q.sinh2_bc() - l.sinh().powi(2)).abs() < 1e-8 * (1.0 + l.sinh().powi(2)));
    }
}

fn scenario() -> impl Strategy<Value = ScenarioName> {
    use ScenarioName::*;
    let names = [
        Thm3,
        Thm4Circles,
        Thm4CircleStrip,
        Thm5,
        Thm6aCircles,
        Thm6aCircleParaball,
        Thm6b,
        Thm6c,
        Thm6d,
        Thm6e,
    ];
    (0..names.len()).prop_map(move |i| names[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The traced boundary and the source regions agree on membership away from the boundary.
    #[test]
    fn traced_boundary_matches_sources(name in scenario(), index in 0u64..10_000, samples in prop::collection::vec((-1.5..1.5f64, -1.5..1.5f64), 40)) {
        let Ok(Draw::Region(region)) = draw(&ScenarioSpec::new(name), index) else { return Ok(()); };
        let center = region.centroid();
        for (u, v) in samples {
            let p = center.exp(u, v);
            let traced = region.membership(&p);
            let sources = region.source_membership(&p);
            if traced != Membership::Boundary && sources != Membership::Boundary {
                prop_assert_eq!(traced, sources, "{:?} at {:?}", name, p);
            }
        }
    }

    /// Moving the whole configuration by a congruence changes nothing that `detect` reports.
    #[test]
    fn detection_is_invariant(name in scenario(), index in 0u64..10_000, params in motion_params()) {
        let Ok(Draw::Region(region)) = draw(&ScenarioSpec::new(name), index) else { return Ok(()); };
        let m = motion_from(region.geometry(), params);
        let phi = m.compose(&region.phi).unwrap();
        let psi = m.compose(&region.psi).unwrap();
        let Ok(Intersection::Region(moved)) = intersect(&region.k, &phi, &region.l, &psi) else {
            return Err(TestCaseError::fail("moved configuration lost its interior"));
        };
        let (a, b) = (detect(&region, 1e-6), detect(&moved, 1e-6));
        prop_assert_eq!(a.is_centrally_symmetric, b.is_centrally_symmetric);
        prop_assert_eq!(a.is_axially_symmetric, b.is_axially_symmetric);
        prop_assert_eq!(a.continuous_family, b.continuous_family);
        // a continuous family is reported through one representative, which depends on the frame
        if a.continuous_family {
            return Ok(());
        }
        prop_assert_eq!(a.found.len(), b.found.len());
        for f in &a.found {
            let conj = m.compose(&f.iso).unwrap().compose(&m.inverse()).unwrap();
            prop_assert!(
                b.found.iter().any(|h| h.kind == f.kind && close(&h.iso, &conj, 1e-6)),
                "{:?}: {:?} has no counterpart", name, f.kind
            );
        }
    }
}

#[test]
fn transvection_moves_origin_to_point() {
    for g in GEOMETRIES {
        let p = Point::polar(g, 0.4, 0.9);
        let q = Isometry::transvection(&p).apply(&Point::origin(g)).unwrap();
        assert!((q.coords() - p.coords()).norm() < 1e-12);
    }
}
