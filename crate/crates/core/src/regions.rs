//! Closed convex regions whose boundary components are cycles.

use serde::{Deserialize, Serialize};

use crate::cycles::{Cycle, CycleKind, Side};
use crate::error::{Error, Result};
use crate::geom::{Geometry, IdealPoint, Isometry, Point, Vec3};
use crate::spec::{GeodesicSpec, PointSpec};

/// Default upper bound on the number of boundary components.
pub const DEFAULT_COMPONENT_CAP: usize = 64;
/// Band around a boundary inside which a point counts as lying on it.
pub const BOUNDARY_BAND: f64 = 1e-10;
/// Tolerance for merging ideal points, in boundary coordinates.
pub const IDEAL_DEDUP_TOL: f64 = 1e-9;

/// Which side of a geodesic a half-plane keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfSide {
    /// The side containing the origin (for lines through the origin: opposite the normal angle).
    #[default]
    Near,
    Far,
}

/// One chord of a [`RegionSpec::ChordAssembly`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChordSpec {
    /// Boundary angles of the chord's ends.
    pub ends: [f64; 2],
    /// Distance of the hypercycle replacing the chord, moved away from the region.
    #[serde(default)]
    pub distance: f64,
}

/// Region grammar shared by the API and the JSON format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionSpec {
    Ball {
        geometry: Geometry,
        center: PointSpec,
        radius: f64,
    },
    /// H² horoball.
    Paraball { ideal_angle: f64, through: PointSpec },
    /// H² region bounded by one hypercycle, containing its base line.
    Hyperdomain {
        base: GeodesicSpec,
        distance: f64,
        #[serde(default)]
        side: HalfSide,
    },
    HalfPlane {
        geometry: Geometry,
        line: GeodesicSpec,
        #[serde(default)]
        side: HalfSide,
    },
    /// R² strip of the given width centred on `line`.
    Strip { line: GeodesicSpec, width: f64 },
    /// H² points within `distance` of `base`.
    ParallelDomain { base: GeodesicSpec, distance: f64 },
    /// H² points at signed distance in `[-below, above]` from `base` (positive on the far side).
    HyperBand { base: GeodesicSpec, below: f64, above: f64 },
    /// H² region cut out by Klein-model chords, each pushed outwards to a hypercycle.
    ChordAssembly {
        chords: Vec<ChordSpec>,
        #[serde(default)]
        witness: Option<PointSpec>,
    },
}

impl RegionSpec {
    pub fn geometry(&self) -> Geometry {
        match self {
            RegionSpec::Ball { geometry, .. } | RegionSpec::HalfPlane { geometry, .. } => *geometry,
            RegionSpec::Strip { .. } => Geometry::Euclidean,
            _ => Geometry::Hyperbolic,
        }
    }

    pub fn build(&self) -> Result<ConvexRegion> {
        ConvexRegion::from_spec(self)
    }
}

/// Result of [`ConvexRegion::contains`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Interior,
    Boundary,
    Exterior,
}

impl Membership {
    /// Interior or boundary.
    pub fn is_inside(self) -> bool {
        self != Membership::Exterior
    }
}

/// A closed convex region: the intersection of the convex sides of its components.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexRegion {
    geometry: Geometry,
    components: Vec<Cycle>,
    witness: Point,
}

/// Graph on the ideal points of an H² region's boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealGraph {
    pub vertices: Vec<IdealPoint>,
    /// `(a, b, component)`; paracycles appear as self-loops `(a, a, component)`.
    pub edges: Vec<(usize, usize, usize)>,
}

impl IdealGraph {
    fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b, _) in &self.edges {
            if a != b {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        deg
    }

    /// A single cycle through every vertex (including the 2-cycle).
    pub fn is_cycle(&self) -> bool {
        let n = self.vertices.len();
        n >= 2 && self.edges.len() == n && self.degrees().iter().all(|&d| d == 2) && self.connected()
    }

    /// A union of vertex-disjoint paths.
    pub fn is_paths(&self) -> bool {
        let deg = self.degrees();
        if deg.iter().any(|&d| d > 2) {
            return false;
        }
        // a forest with maximum degree 2 is a union of paths
        let proper = self.edges.iter().filter(|(a, b, _)| a != b).count();
        proper + self.components() == self.vertices.len()
    }

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        let mut count = self.vertices.len();
        for &(a, b, _) in &self.edges {
            let (ra, rb) = (Self::find(&mut parent, a), Self::find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }

    fn connected(&self) -> bool {
        self.components() == 1
    }
}

fn ideal_index(vertices: &mut Vec<IdealPoint>, p: IdealPoint) -> usize {
    if let Some(i) = vertices.iter().position(|q| q.boundary_distance(&p) < IDEAL_DEDUP_TOL) {
        return i;
    }
    vertices.push(p);
    vertices.len() - 1
}

/// Point at signed distance `t` from the foot of a straight line, measured along its normal.
fn off_foot(line: &Cycle, t: f64) -> Point {
    let g = line.geometry();
    let n = *line.normal();
    match g {
        Geometry::Euclidean => {
            let h = line.offset() + t;
            Point::euclidean(h * n.x, h * n.y)
        }
        _ => {
            let (foot, _) = line.geodesic_frame();
            let x = match g {
                Geometry::Spherical => foot * t.cos() + n * t.sin(),
                _ => foot * t.cosh() + n * t.sinh(),
            };
            Point::new(g, x).expect("point on the model surface")
        }
    }
}

impl ConvexRegion {
    /// Builds a region from its components and an interior witness.
    pub fn new(geometry: Geometry, components: Vec<Cycle>, witness: Point) -> Result<ConvexRegion> {
        Self::with_cap(geometry, components, witness, DEFAULT_COMPONENT_CAP)
    }

    pub fn with_cap(geometry: Geometry, components: Vec<Cycle>, witness: Point, cap: usize) -> Result<ConvexRegion> {
        if components.is_empty() {
            return Err(Error::InvalidSpec(
                "a region needs at least one boundary component".into(),
            ));
        }
        if components.len() > cap {
            return Err(Error::InvalidSpec(format!(
                "{} components exceed the cap of {cap}",
                components.len()
            )));
        }
        geometry.expect(witness.geometry())?;
        for c in &components {
            geometry.expect(c.geometry())?;
        }
        for (i, a) in components.iter().enumerate() {
            for b in &components[i + 1..] {
                let crossing = match a.cycle_points(b) {
                    Ok(p) => !p.points.is_empty(),
                    Err(Error::CoincidentCycles) => true,
                    Err(e) => return Err(e),
                };
                if crossing {
                    return Err(Error::InvalidSpec("boundary components meet".into()));
                }
            }
        }
        let region = ConvexRegion {
            geometry,
            components,
            witness,
        };
        if region.contains(&witness) != Membership::Interior {
            return Err(Error::DegenerateSpec("the witness is not an interior point".into()));
        }
        Ok(region)
    }

    pub fn from_spec(spec: &RegionSpec) -> Result<ConvexRegion> {
        let h = Geometry::Hyperbolic;
        let invalid = |m: String| Err(Error::InvalidSpec(m));
        match spec {
            RegionSpec::Ball {
                geometry,
                center,
                radius,
            } => {
                let c = center.resolve(*geometry)?;
                let circle = Cycle::circle(&c, *radius).map_err(|e| Error::InvalidSpec(e.to_string()))?;
                Self::new(*geometry, vec![circle], c)
            }
            RegionSpec::Paraball { ideal_angle, through } => {
                let p = through.resolve(h)?;
                let c = Cycle::paracycle(&IdealPoint::at_angle(h, *ideal_angle), &p)?;
                let deeper = Cycle::from_section(h, *c.normal(), 0.5 * c.offset(), Side::Above)?;
                Self::new(h, vec![c], deeper.point_at(0.0))
            }
            RegionSpec::Hyperdomain { base, distance, side } => {
                if !(*distance > 0.0) {
                    return invalid(format!("hyperdomain distance must be positive, got {distance}"));
                }
                let b = base.resolve(h)?;
                let l = if *side == HalfSide::Far { *distance } else { -*distance };
                Self::new(h, vec![Cycle::hypercycle(&b, l)?], off_foot(&b, 0.0))
            }
            RegionSpec::HalfPlane { geometry, line, side } => {
                let mut b = line.resolve(*geometry)?;
                if *side == HalfSide::Far {
                    b = b.reversed()?;
                }
                // S² great circles keep the side B(x, n) ≥ 0, the others B(x, n) ≤ h
                let depth = match geometry {
                    Geometry::Spherical => 0.5,
                    Geometry::Hyperbolic => -0.5,
                    Geometry::Euclidean => -1.0,
                };
                let w = off_foot(&b, depth);
                Self::new(*geometry, vec![b], w)
            }
            RegionSpec::Strip { line, width } => {
                if !(*width > 0.0) {
                    return invalid(format!("strip width must be positive, got {width}"));
                }
                let mid = line.resolve(Geometry::Euclidean)?;
                let u = *mid.normal();
                let a = Cycle::from_section(Geometry::Euclidean, u, mid.offset() + 0.5 * width, Side::Below)?;
                let b = Cycle::from_section(Geometry::Euclidean, -u, -mid.offset() + 0.5 * width, Side::Below)?;
                Self::new(Geometry::Euclidean, vec![a, b], off_foot(&mid, 0.0))
            }
            RegionSpec::ParallelDomain { base, distance } => {
                if !(*distance > 0.0) {
                    return invalid(format!("parallel domain distance must be positive, got {distance}"));
                }
                let b = base.resolve(h)?;
                let comps = vec![Cycle::hypercycle(&b, *distance)?, Cycle::hypercycle(&b, -*distance)?];
                Self::new(h, comps, off_foot(&b, 0.0))
            }
            RegionSpec::HyperBand { base, below, above } => {
                if !(*below >= 0.0 && *above >= 0.0) || *below + *above <= 0.0 {
                    return invalid(format!(
                        "hyper band needs non-negative distances with positive sum, got {below}, {above}"
                    ));
                }
                let b = base.resolve(h)?;
                let upper = if *above > 0.0 {
                    Cycle::hypercycle(&b, *above)?
                } else {
                    b
                };
                let lower = if *below > 0.0 {
                    Cycle::hypercycle(&b, -*below)?
                } else {
                    b.reversed()?
                };
                Self::new(h, vec![upper, lower], off_foot(&b, 0.5 * (*above - *below)))
            }
            RegionSpec::ChordAssembly { chords, witness } => {
                let w = witness.unwrap_or_default().resolve(h)?;
                Self::chord_assembly(chords, w)
            }
        }
    }

    fn chord_assembly(chords: &[ChordSpec], witness: Point) -> Result<ConvexRegion> {
        let h = Geometry::Hyperbolic;
        if chords.is_empty() {
            return Err(Error::InvalidSpec("chord assembly needs at least one chord".into()));
        }
        let tau = std::f64::consts::TAU;
        let norm = |a: f64| a.rem_euclid(tau);
        for (i, a) in chords.iter().enumerate() {
            for b in &chords[i + 1..] {
                // chords cross inside the disk iff their ends interleave on the circle
                let (a0, a1) = (norm(a.ends[0]), norm(a.ends[1]));
                let (lo, hi) = (a0.min(a1), a0.max(a1));
                let inside = |t: f64| {
                    let t = norm(t);
                    t > lo + 1e-12 && t < hi - 1e-12
                };
                let outside = |t: f64| {
                    let t = norm(t);
                    t < lo - 1e-12 || t > hi + 1e-12
                };
                let (b0, b1) = (b.ends[0], b.ends[1]);
                if (inside(b0) && outside(b1)) || (outside(b0) && inside(b1)) {
                    return Err(Error::InvalidSpec(format!(
                        "chords {:?} and {:?} cross inside the Klein disk",
                        a.ends, b.ends
                    )));
                }
            }
        }
        let mut comps = Vec::with_capacity(chords.len());
        for c in chords {
            if !(c.distance >= 0.0) || !c.distance.is_finite() {
                return Err(Error::InvalidSpec(format!(
                    "chord distance must be non-negative, got {}",
                    c.distance
                )));
            }
            let mut base =
                Cycle::geodesic_ideal(&IdealPoint::at_angle(h, c.ends[0]), &IdealPoint::at_angle(h, c.ends[1]))
                    .map_err(|e| Error::InvalidSpec(e.to_string()))?;
            let v = base.inside_value(&witness);
            if v.abs() <= BOUNDARY_BAND {
                return Err(Error::DegenerateSpec("the witness lies on a chord".into()));
            }
            if v < 0.0 {
                base = base.reversed()?;
            }
            comps.push(Cycle::hypercycle(&base, c.distance)?);
        }
        Self::new(h, comps, witness).map_err(|e| match e {
            Error::InvalidSpec(m) => Error::InvalidSpec(format!("chord assembly: {m}")),
            e => e,
        })
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn components(&self) -> &[Cycle] {
        &self.components
    }

    pub fn witness(&self) -> &Point {
        &self.witness
    }

    /// Smallest value of `inside_value` over the components.
    pub(crate) fn depth(&self, p: &Point) -> f64 {
        self.components
            .iter()
            .map(|c| c.inside_value(p))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, p: &Point) -> Membership {
        let d = self.depth(p);
        if d > BOUNDARY_BAND {
            Membership::Interior
        } else if d >= -BOUNDARY_BAND {
            Membership::Boundary
        } else {
            Membership::Exterior
        }
    }

    /// Checked membership test.
    pub fn try_contains(&self, p: &Point) -> Result<Membership> {
        self.geometry.expect(p.geometry())?;
        Ok(self.contains(p))
    }

    /// Image under an isometry.
    pub fn transform(&self, iso: &Isometry) -> Result<ConvexRegion> {
        self.geometry.expect(iso.geometry())?;
        Ok(ConvexRegion {
            geometry: self.geometry,
            components: self.components.iter().map(|c| c.transform_raw(iso)).collect(),
            witness: iso.apply_raw(&self.witness),
        })
    }

    /// Graph of the ideal points of the boundary.
    pub fn ideal_graph(&self) -> Result<IdealGraph> {
        if self.geometry != Geometry::Hyperbolic {
            return Err(Error::UnsupportedGeometry {
                op: "ideal graph",
                geometry: self.geometry,
            });
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            match c.kind() {
                CycleKind::Circle { .. } => {
                    return Err(Error::UnsupportedGeometry {
                        op: "ideal graph of a region bounded by a circle",
                        geometry: self.geometry,
                    })
                }
                CycleKind::Paracycle => {
                    let i = ideal_index(&mut vertices, c.ideal_points()[0]);
                    edges.push((i, i, k));
                }
                _ => {
                    let pts = c.ideal_points();
                    let a = ideal_index(&mut vertices, pts[0]);
                    let b = ideal_index(&mut vertices, pts[1]);
                    edges.push((a, b, k));
                }
            }
        }
        Ok(IdealGraph { vertices, edges })
    }

    /// Smallest distance between two distinct boundary components (`+∞` for one component).
    pub fn min_component_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.components.iter().enumerate() {
            for b in &self.components[i + 1..] {
                best = best.min(component_distance(a, b));
            }
        }
        best
    }
}

/// Distance between two non-crossing boundary curves.
fn component_distance(a: &Cycle, b: &Cycle) -> f64 {
    let g = a.geometry();
    match g {
        Geometry::Euclidean => match (a.kind(), b.kind()) {
            (CycleKind::Line, CycleKind::Line) => {
                let (u, v) = (a.normal(), b.normal());
                if (u.x * v.y - u.y * v.x).abs() > 1e-14 {
                    0.0
                } else {
                    // parallel: u·x = h1 and v·x = h2 with v = ±u
                    let s = u.x * v.x + u.y * v.y;
                    (a.offset() - s * b.offset()).abs()
                }
            }
            _ => sampled_distance(a, b),
        },
        Geometry::Hyperbolic => {
            let banded = |c: &Cycle| matches!(c.kind(), CycleKind::Geodesic | CycleKind::Hypercycle { .. });
            if !(banded(a) && banded(b)) {
                return sampled_distance(a, b);
            }
            let (na, nb) = (a.normal(), b.normal());
            let q = g.form(na, nb).abs();
            let shared = (na - nb).norm().min((na + nb).norm()) < 1e-12;
            if q <= 1.0 + 1e-12 && !shared {
                return 0.0;
            }
            let base = if shared { 0.0 } else { q.acosh() };
            let (la, lb) = (a.offset().asinh(), b.offset().asinh());
            // +1 when the curve is pushed towards the other base line
            let facing = |n: &Vec3, other: &Cycle| {
                let (foot, _) = other.geodesic_frame();
                if g.form(&foot, n) > 0.0 {
                    1.0
                } else {
                    -1.0
                }
            };
            (base - facing(na, b) * la - facing(nb, a) * lb).max(0.0)
        }
        Geometry::Spherical => sampled_distance(a, b),
    }
}

/// Brute-force minimum over sampled point pairs, refined locally.
pub(crate) fn sampled_distance(a: &Cycle, b: &Cycle) -> f64 {
    let range = |c: &Cycle| {
        if c.is_closed() {
            (-std::f64::consts::PI, std::f64::consts::PI)
        } else {
            (-6.0, 6.0)
        }
    };
    let (ra, rb) = (range(a), range(b));
    let n = 400;
    let d = |s: f64, t: f64| crate::geom::distance(&a.point_at(s), &b.point_at(t)).unwrap_or(f64::INFINITY);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=n {
        let s = ra.0 + (ra.1 - ra.0) * i as f64 / n as f64;
        for j in 0..=n {
            let t = rb.0 + (rb.1 - rb.0) * j as f64 / n as f64;
            let v = d(s, t);
            if v < best.0 {
                best = (v, s, t);
            }
        }
    }
    let (mut v, mut s, mut t) = best;
    let mut step = (ra.1 - ra.0).max(rb.1 - rb.0) / n as f64;
    while step > 1e-12 {
        let mut moved = false;
        for (ds, dt) in [
            (step, 0.0),
            (-step, 0.0),
            (0.0, step),
            (0.0, -step),
            (step, step),
            (-step, -step),
            (step, -step),
            (-step, step),
        ] {
            let w = d(s + ds, t + dt);
            if w < v {
                v = w;
                s += ds;
                t += dt;
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const H: Geometry = Geometry::Hyperbolic;

    fn geo(normal_angle: f64, distance: f64) -> GeodesicSpec {
        GeodesicSpec::Normal { normal_angle, distance }
    }

    #[test]
    fn ball_has_one_component() {
        let k = RegionSpec::Ball {
            geometry: H,
            center: PointSpec::default(),
            radius: 1.0,
        }
        .build()
        .unwrap();
        assert_eq!(k.components().len(), 1);
        assert_eq!(k.contains(k.witness()), Membership::Interior);
        assert_eq!(k.contains(&k.components()[0].point_at(0.3)), Membership::Boundary);
        assert_eq!(k.contains(&Point::polar(H, 0.0, 1.1)), Membership::Exterior);
        assert_eq!(k.min_component_distance(), f64::INFINITY);
    }

    #[test]
    fn parallel_domain_shape() {
        let l = 0.4;
        let k = RegionSpec::ParallelDomain {
            base: geo(0.3, 0.5),
            distance: l,
        }
        .build()
        .unwrap();
        assert_eq!(k.components().len(), 2);
        for c in k.components() {
            assert!((c.curvature() - l.tanh()).abs() < 1e-12);
        }
        let g = k.ideal_graph().unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 2));
        assert!(g.is_cycle());
        assert!((k.min_component_distance() - 2.0 * l).abs() < 1e-12);
        let sampled = sampled_distance(&k.components()[0], &k.components()[1]);
        assert!((sampled - 2.0 * l).abs() < 1e-6, "{sampled}");
    }

    #[test]
    fn half_plane_graph_is_a_path() {
        let k = RegionSpec::HalfPlane {
            geometry: H,
            line: geo(1.0, 0.2),
            side: HalfSide::Near,
        }
        .build()
        .unwrap();
        let g = k.ideal_graph().unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 1));
        assert!(g.is_paths() && !g.is_cycle());
        assert_eq!(k.contains(&Point::origin(H)), Membership::Interior);
        let far = RegionSpec::HalfPlane {
            geometry: H,
            line: geo(1.0, 0.2),
            side: HalfSide::Far,
        }
        .build()
        .unwrap();
        assert_eq!(far.contains(&Point::origin(H)), Membership::Exterior);
    }

    #[test]
    fn chord_assembly_graph_and_crossing_rejection() {
        let chords = vec![
            ChordSpec {
                ends: [0.2, 1.0],
                distance: 0.1,
            },
            ChordSpec {
                ends: [2.0, 3.0],
                distance: 0.0,
            },
            ChordSpec {
                ends: [4.0, 5.0],
                distance: 0.3,
            },
        ];
        let k = RegionSpec::ChordAssembly {
            chords: chords.clone(),
            witness: None,
        }
        .build()
        .unwrap();
        let g = k.ideal_graph().unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (6, 3));
        assert!(g.is_paths());
        let crossing = vec![
            ChordSpec {
                ends: [0.0, 2.0],
                distance: 0.0,
            },
            ChordSpec {
                ends: [1.0, 3.0],
                distance: 0.0,
            },
        ];
        assert!(matches!(
            RegionSpec::ChordAssembly {
                chords: crossing,
                witness: None
            }
            .build(),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn chord_distance_matches_common_perpendicular() {
        // two chords symmetric about the origin at distance rho from it
        let rho = 0.35;
        let mk = |theta: f64, l: f64| {
            let c = Cycle::geodesic(H, theta, rho);
            let e = c.ideal_points();
            ChordSpec {
                ends: [e[0].angle(), e[1].angle()],
                distance: l,
            }
        };
        let k = RegionSpec::ChordAssembly {
            chords: vec![mk(0.0, 0.0), mk(PI, 0.0)],
            witness: None,
        }
        .build()
        .unwrap();
        assert!((k.min_component_distance() - 2.0 * rho).abs() < 1e-8);
        let k = RegionSpec::ChordAssembly {
            chords: vec![mk(0.0, 0.2), mk(PI, 0.1)],
            witness: None,
        }
        .build()
        .unwrap();
        let expect = 2.0 * rho + 0.3;
        assert!((k.min_component_distance() - expect).abs() < 1e-8);
        let s = sampled_distance(&k.components()[0], &k.components()[1]);
        assert!((s - expect).abs() < 1e-6);
    }

    #[test]
    fn facing_hypercycles_subtract_offsets() {
        // base lines at distance D, curves pushed towards each other
        let (d, l1, l2) = (2.0, 0.3, 0.5);
        let a = Cycle::hypercycle(&Cycle::geodesic(H, 0.0, d / 2.0), -l1).unwrap();
        let b = Cycle::hypercycle(&Cycle::geodesic(H, PI, d / 2.0), -l2).unwrap();
        let expect = d - l1 - l2;
        assert!((component_distance(&a, &b) - expect).abs() < 1e-12);
        assert!((sampled_distance(&a, &b) - expect).abs() < 1e-6);
    }

    #[test]
    fn strip_and_hyper_band() {
        let s = RegionSpec::Strip {
            line: geo(0.0, 1.0),
            width: 2.0,
        }
        .build()
        .unwrap();
        assert_eq!(s.components().len(), 2);
        assert!((s.min_component_distance() - 2.0).abs() < 1e-12);
        assert_eq!(s.contains(&Point::euclidean(0.5, 7.0)), Membership::Interior);
        assert_eq!(s.contains(&Point::euclidean(-0.5, 7.0)), Membership::Exterior);
        let b = RegionSpec::HyperBand {
            base: geo(0.0, 0.0),
            below: 0.0,
            above: 0.7,
        }
        .build()
        .unwrap();
        assert_eq!(b.components().len(), 2);
        assert_eq!(b.contains(&Point::polar(H, 0.0, 0.35)), Membership::Interior);
        assert_eq!(b.contains(&Point::polar(H, PI, 0.1)), Membership::Exterior);
    }

    #[test]
    fn spherical_regions() {
        let hemi = RegionSpec::HalfPlane {
            geometry: Geometry::Spherical,
            line: geo(0.0, 0.3),
            side: HalfSide::Near,
        }
        .build()
        .unwrap();
        assert_eq!(hemi.contains(&Point::origin(Geometry::Spherical)), Membership::Interior);
        let ball = RegionSpec::Ball {
            geometry: Geometry::Spherical,
            center: PointSpec::default(),
            radius: PI / 2.0,
        }
        .build()
        .unwrap();
        assert_eq!(ball.components()[0].curvature(), 0.0);
    }

    #[test]
    fn json_round_trip() {
        let spec = RegionSpec::ParallelDomain {
            base: geo(0.1, 0.2),
            distance: 0.4,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"kind\":\"parallel_domain\""));
        let back: RegionSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let paraball: RegionSpec =
            serde_json::from_str(r#"{"kind": "paraball", "ideal_angle": 0.0, "through": [0, 0, 1]}"#).unwrap();
        let k = paraball.build().unwrap();
        assert_eq!(k.contains(&Point::polar(H, 0.0, 0.5)), Membership::Interior);
        assert_eq!(k.contains(&Point::polar(H, PI, 0.5)), Membership::Exterior);
    }
}
