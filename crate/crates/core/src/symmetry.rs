//! Central and axial symmetries of an intersection.
//!
//! Candidates come from the combinatorics of the traced boundary: pairs of
//! congruent supporting cycles, pairs of corners, and corner angle bisectors.
//! Each candidate is then checked exactly against the arc data.

use serde::{Deserialize, Serialize};

use crate::cycles::{Cycle, CycleKind};
use crate::error::Result;
use crate::geom::{distance, Geometry, Isometry, Point, Vec3};
use crate::intersect::{intersect, Intersection, IntersectionRegion, Vertex};

/// Default acceptance threshold for [`verify`] residuals.
pub const DEFAULT_TOL: f64 = 1e-6;

/// `cosh` of the centroid's distance from the origin beyond which [`detect`]
/// works in a frame centred on the region.
const RECENTRE_COSH: f64 = 3.0;
/// Candidates closer than this in matrix norm are merged.
const DEDUP_TOL: f64 = 1e-8;
/// Verified symmetries closer than this (relative matrix distance) are one symmetry.
const MERGE_TOL: f64 = 1e-3;
const CURVATURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryKind {
    Central,
    Axial,
    /// A rotation of order other than two.
    Rotation,
    /// Parabolic maps are never proposed; kept so reports can name them.
    ParabolicExcluded,
}

#[derive(Debug, Clone)]
pub struct FoundSymmetry {
    pub kind: SymmetryKind,
    pub iso: Isometry,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct SymmetryReport {
    pub found: Vec<FoundSymmetry>,
    pub is_centrally_symmetric: bool,
    pub is_axially_symmetric: bool,
    pub has_nontrivial: bool,
    /// The candidates stand for a one-parameter family of symmetries.
    pub continuous_family: bool,
    pub tolerance: f64,
    /// Number of candidates examined.
    pub candidates: usize,
}

impl SymmetryReport {
    /// Largest residual among the accepted symmetries (0 if none).
    pub fn max_residual(&self) -> f64 {
        self.found.iter().map(|f| f.residual).fold(0.0, f64::max)
    }
}

/// Classifies a non-identity isometry.
pub fn classify(iso: &Isometry) -> SymmetryKind {
    if iso.orientation() < 0 {
        SymmetryKind::Axial
    } else if iso.is_involution(1e-8) {
        SymmetryKind::Central
    } else {
        SymmetryKind::Rotation
    }
}

/// Column of `m` with the largest Euclidean norm.
fn dominant_column(m: &crate::geom::Mat3) -> Vec3 {
    (0..3)
        .map(|j| m.column(j).into_owned())
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("three columns")
}

/// The geodesic fixed pointwise by a reflection.
pub fn reflection_axis(iso: &Isometry) -> Option<Cycle> {
    if classify(iso) != SymmetryKind::Axial {
        return None;
    }
    let g = iso.geometry();
    let m = iso.matrix();
    let fixed = crate::geom::Mat3::identity() - m;
    match g {
        Geometry::Euclidean => {
            let mut u = dominant_column(&fixed.fixed_view::<3, 3>(0, 0).into_owned());
            u.z = 0.0;
            let len = u.x.hypot(u.y);
            if len < 1e-12 {
                return None;
            }
            u /= len;
            let offset = 0.5 * (u.x * m[(0, 2)] + u.y * m[(1, 2)]);
            Cycle::geodesic_normal(g, &u, offset).ok()
        }
        _ => Cycle::geodesic_normal(g, &dominant_column(&fixed), 0.0).ok(),
    }
}

/// The centre of a point reflection (on S², the one of the two antipodal centres with `x3 ≥ 0`).
pub fn reflection_center(iso: &Isometry) -> Option<Point> {
    if classify(iso) != SymmetryKind::Central {
        return None;
    }
    let g = iso.geometry();
    let m = iso.matrix();
    match g {
        Geometry::Euclidean => Some(Point::euclidean(0.5 * m[(0, 2)], 0.5 * m[(1, 2)])),
        _ => {
            let mut p = dominant_column(&(crate::geom::Mat3::identity() + m));
            if p.z < 0.0 {
                p = -p;
            }
            crate::geom::renormalize(g, &p).map(|x| Point::from_normalized(g, x))
        }
    }
}

fn same_family(a: &Cycle, b: &Cycle) -> bool {
    let class = |c: &Cycle| match c.kind() {
        CycleKind::Circle { .. } => 0,
        CycleKind::Paracycle => 1,
        CycleKind::Hypercycle { .. } | CycleKind::Geodesic => 2,
        CycleKind::Line => 3,
    };
    class(a) == class(b) && (a.curvature() - b.curvature()).abs() < CURVATURE_TOL
}

struct Candidates {
    geometry: Geometry,
    list: Vec<Isometry>,
}

impl Candidates {
    fn push(&mut self, iso: Isometry) {
        if !iso.matrix().iter().all(|x| x.is_finite()) || iso.is_identity(DEDUP_TOL) {
            return;
        }
        if self.list.iter().all(|c| c.matrix_distance(&iso) >= DEDUP_TOL) {
            self.list.push(iso);
        }
    }

    /// Reflection in `{B(x, m) = 0}` (σ = ±1) if that plane is a geodesic.
    fn reflect_normal(&mut self, m: Vec3) {
        let g = self.geometry;
        let q = g.form(&m, &m);
        if m.norm() < 1e-12 || q <= 1e-12 * m.norm_squared() {
            return;
        }
        self.push(Isometry::reflection_normal(g, &(m / q.sqrt()), 0.0));
    }

    /// Reflection in the R² line `{u·x = c}`.
    fn reflect_line(&mut self, u: (f64, f64), c: f64) {
        let n = u.0.hypot(u.1);
        if n < 1e-12 {
            return;
        }
        self.push(Isometry::reflection_normal(
            Geometry::Euclidean,
            &Vec3::new(u.0 / n, u.1 / n, 0.0),
            c / n,
        ));
    }

    fn reflect_cycle(&mut self, axis: Result<Cycle>) {
        if let Ok(c) = axis {
            if let Ok(r) = Isometry::reflection(&c) {
                self.push(r);
            }
        }
    }

    /// Point reflection at the point proportional to `p` (σ = ±1), if it is one.
    fn central_at(&mut self, p: Vec3) {
        let g = self.geometry;
        if g == Geometry::Hyperbolic && g.form(&p, &p) >= -1e-12 * p.norm_squared() {
            return;
        }
        if let Ok(c) = Point::new(g, p) {
            self.push(Isometry::point_reflection(&c));
        }
    }
}

/// Unit tangent at `v` pointing along the arc away from `v`.
fn outgoing(arc: &crate::intersect::Arc, at_start: bool) -> Vec3 {
    let g = arc.support.geometry();
    let t = if at_start { arc.t0 } else { arc.t1 };
    let mut d = arc.support.tangent_at(t);
    if !at_start {
        d = -d;
    }
    let n = match g {
        Geometry::Euclidean => d.x.hypot(d.y),
        _ => g.form(&d, &d).max(0.0).sqrt(),
    };
    d / n
}

/// A vector `B`-orthogonal to `n` close to a coordinate axis.
fn orthogonal_axis(g: Geometry, n: &Vec3) -> Vec3 {
    let a = if n.y.abs() > 0.9 * n.norm() {
        Vec3::new(1.0, 0.0, 0.0)
    } else {
        Vec3::new(0.0, 1.0, 0.0)
    };
    a - n * (g.form(&a, n) / g.form(n, n))
}

fn parallel_normals(a: &Cycle, b: &Cycle) -> bool {
    let (na, nb) = (a.normal(), b.normal());
    na.cross(nb).norm() < 1e-12 * na.norm() * nb.norm()
}

/// Canonical members of the symmetry family of a single straight-ish support.
fn single_support(c: &Cycle, out: &mut Candidates) {
    let g = c.geometry();
    let n = *c.normal();
    match (g, c.kind()) {
        (Geometry::Euclidean, CycleKind::Circle { .. }) => {
            out.reflect_line((0.0, 1.0), n.y);
            out.push(Isometry::point_reflection(&Point::euclidean(n.x, n.y)));
        }
        (Geometry::Euclidean, _) => out.reflect_line((n.y, -n.x), 0.0),
        (_, CycleKind::Circle { .. }) => {
            out.reflect_normal(orthogonal_axis(g, &n));
            out.central_at(n);
        }
        (_, CycleKind::Paracycle) => out.reflect_normal(Vec3::new(n.y, -n.x, 0.0)),
        _ => {
            let (_, e) = c.geodesic_frame();
            out.reflect_normal(e);
        }
    }
}

/// Rules for a pair of supporting cycles.
fn cycle_pair(a: &Cycle, b: &Cycle, out: &mut Candidates) {
    let g = a.geometry();
    if g == Geometry::Euclidean {
        return euclidean_pair(a, b, out);
    }
    if same_family(a, b) {
        let (na, nb) = (a.symmetry_normal(), b.symmetry_normal());
        let (na, nb) = match g {
            Geometry::Spherical => (na / na.norm(), nb / nb.norm()),
            _ => (na, nb),
        };
        out.reflect_normal(na - nb);
        out.central_at(na + nb);
    }
    if parallel_normals(a, b) {
        // common base line or common centre: canonical members of the family
        let (foot, e) = match a.kind() {
            CycleKind::Circle { .. } => (*a.normal(), orthogonal_axis(g, a.normal())),
            _ => a.geodesic_frame(),
        };
        out.reflect_normal(e);
        out.central_at(foot);
    } else {
        out.reflect_normal(g.cross(a.normal(), b.normal()));
    }
}

fn euclidean_pair(a: &Cycle, b: &Cycle, out: &mut Candidates) {
    let (na, nb) = (*a.normal(), *b.normal());
    match (a.kind(), b.kind()) {
        (CycleKind::Circle { radius: ra }, CycleKind::Circle { radius: rb }) => {
            let d = (nb.x - na.x, nb.y - na.y);
            if d.0.hypot(d.1) < 1e-12 {
                return;
            }
            if (ra - rb).abs() < CURVATURE_TOL {
                let mid = (0.5 * (na.x + nb.x), 0.5 * (na.y + nb.y));
                out.reflect_line(d, d.0 * mid.0 + d.1 * mid.1);
                out.push(Isometry::point_reflection(&Point::euclidean(mid.0, mid.1)));
            }
            // the line through both centres
            let u = (-d.1, d.0);
            out.reflect_line(u, u.0 * na.x + u.1 * na.y);
        }
        (CycleKind::Line, CycleKind::Circle { .. }) => euclidean_pair(b, a, out),
        (CycleKind::Circle { .. }, CycleKind::Line) => {
            let e = (nb.y, -nb.x);
            out.reflect_line(e, e.0 * na.x + e.1 * na.y);
        }
        _ => {
            let cross = na.x * nb.y - na.y * nb.x;
            if cross.abs() > 1e-12 {
                // bisector through the crossing point, swapping the two lines
                let x = (a.offset() * nb.y - b.offset() * na.y) / cross;
                let y = (na.x * b.offset() - nb.x * a.offset()) / cross;
                let m = (na.x - nb.x, na.y - nb.y);
                out.reflect_line(m, m.0 * x + m.1 * y);
            } else if na.x * nb.x + na.y * nb.y < 0.0 {
                let mid = 0.5 * (a.offset() - b.offset());
                out.reflect_line((na.x, na.y), mid);
                out.reflect_line((na.y, -na.x), 0.0);
                out.push(Isometry::point_reflection(&Point::euclidean(mid * na.x, mid * na.y)));
            }
        }
    }
}

/// Rules for a pair of finite corners.
fn vertex_pair(p: &Point, q: &Point, out: &mut Candidates) {
    let g = p.geometry();
    if let Ok(m) = p.midpoint(q) {
        out.push(Isometry::point_reflection(&m));
    }
    out.reflect_cycle(Cycle::geodesic_through(p, q));
    match g {
        Geometry::Euclidean => {
            let (a, b) = (p.coords(), q.coords());
            let d = (b.x - a.x, b.y - a.y);
            out.reflect_line(d, d.0 * 0.5 * (a.x + b.x) + d.1 * 0.5 * (a.y + b.y));
        }
        _ => out.reflect_normal(p.coords() - q.coords()),
    }
}

/// Whether the candidates stand for a continuous family.
fn has_family(region: &IntersectionRegion) -> bool {
    let idx = region.boundary_supports();
    let s = region.supports();
    if idx.len() <= 1 {
        return true;
    }
    if !region.finite_vertices().is_empty() {
        return false;
    }
    idx.iter().all(|&i| idx.iter().all(|&j| parallel_normals(&s[i], &s[j])))
}

/// Candidate non-trivial symmetries, deduplicated.
pub fn candidate_symmetries(region: &IntersectionRegion) -> Vec<Isometry> {
    let g = region.geometry();
    let mut out = Candidates {
        geometry: g,
        list: Vec::new(),
    };
    let supports = region.supports();
    let idx = region.boundary_supports();
    if idx.len() == 1 {
        single_support(&supports[idx[0]], &mut out);
    }
    for (k, &i) in idx.iter().enumerate() {
        for &j in &idx[k + 1..] {
            cycle_pair(&supports[i], &supports[j], &mut out);
        }
    }
    for &i in &idx {
        let c = &supports[i];
        if let CycleKind::Circle { .. } = c.kind() {
            let n = c.normal();
            match g {
                Geometry::Euclidean => out.push(Isometry::point_reflection(&Point::euclidean(n.x, n.y))),
                _ => out.central_at(*n),
            }
        }
    }
    let finite = region.finite_vertices();
    for (k, p) in finite.iter().enumerate() {
        for q in &finite[k + 1..] {
            vertex_pair(p, q, &mut out);
        }
    }
    // inner angle bisectors
    for id in region.vertex_ids() {
        let Vertex::Finite(v) = *region.vertex(id) else {
            continue;
        };
        let dirs: Vec<Vec3> = region
            .chains
            .iter()
            .flat_map(|c| c.arcs.iter())
            .filter_map(|a| {
                if a.start_id == id {
                    Some(outgoing(a, true))
                } else if a.end_id == id {
                    Some(outgoing(a, false))
                } else {
                    None
                }
            })
            .collect();
        if let [d1, d2] = dirs[..] {
            let bis = d1 + d2;
            if bis.norm() > 1e-9 {
                out.reflect_cycle(Cycle::geodesic_tangent(&v, &bis));
            }
        }
    }
    out.list
}

fn augment(u: usize, t: f64, cost: &[Vec<f64>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for v in 0..cost.len() {
        if cost[u][v] <= t && !seen[v] {
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, t, cost, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
    }
    false
}

/// Perfect matching using only costs `≤ t`, as `row → column`.
fn matching(cost: &[Vec<f64>], t: f64) -> Option<Vec<usize>> {
    let n = cost.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        if !augment(u, t, cost, &mut vec![false; n], &mut owner) {
            return None;
        }
    }
    let mut map = vec![0; n];
    for (v, u) in owner.iter().enumerate() {
        map[u.expect("perfect matching")] = v;
    }
    Some(map)
}

/// Optimal bottleneck assignment on a square cost matrix; `None` if every
/// perfect matching uses an infinite cost.
fn assignment(cost: &[Vec<f64>]) -> Option<(f64, Vec<usize>)> {
    if cost.is_empty() {
        return Some((0.0, Vec::new()));
    }
    let mut levels: Vec<f64> = cost.iter().flatten().copied().filter(|c| c.is_finite()).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let top = *levels.last()?;
    matching(cost, top)?;
    let (mut lo, mut hi) = (0, levels.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if matching(cost, levels[mid]).is_some() {
            hi = mid
        } else {
            lo = mid + 1
        }
    }
    Some((levels[lo], matching(cost, levels[lo])?))
}

fn signature_distance(a: &Cycle, b: &Cycle) -> f64 {
    let (x, y) = (a.signature(), b.signature());
    let scale = 1.0 + x.iter().map(|v| v.abs()).fold(0.0, f64::max);
    x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max) / scale
}

/// Residual of `iso` as a symmetry of `region`: 0 for an exact symmetry.
///
/// Evaluated in the region's own frame. For H² regions far from the origin the
/// result is dominated by rounding; [`detect`] evaluates in a recentred frame.
pub fn verify(region: &IntersectionRegion, iso: &Isometry) -> Result<f64> {
    region.geometry().expect(iso.geometry())?;
    let supports = region.supports();
    let idx = region.boundary_supports();
    let moved: Vec<Cycle> = idx.iter().map(|&i| supports[i].transform_raw(iso)).collect();
    let cost: Vec<Vec<f64>> = moved
        .iter()
        .map(|m| idx.iter().map(|&j| signature_distance(m, &supports[j])).collect())
        .collect();
    let Some((r_cycles, smap)) = assignment(&cost) else {
        return Ok(f64::INFINITY);
    };
    let ids = region.vertex_ids();
    let cost: Vec<Vec<f64>> = ids
        .iter()
        .map(|&i| {
            ids.iter()
                .map(|&j| match (region.vertex(i), region.vertex(j)) {
                    (Vertex::Finite(p), Vertex::Finite(q)) => distance(&iso.apply_raw(p), q).unwrap_or(f64::INFINITY),
                    (Vertex::Ideal(p), Vertex::Ideal(q)) => iso.apply_ideal_raw(p).boundary_distance(q),
                    _ => f64::INFINITY,
                })
                .collect()
        })
        .collect();
    let Some((r_vertices, vmap)) = assignment(&cost) else {
        return Ok(f64::INFINITY);
    };
    // arc adjacency under the two matchings
    let pos_v = |id: usize| ids.iter().position(|&x| x == id).expect("vertex id");
    let pos_s = |s: usize| idx.iter().position(|&x| x == s).expect("support id");
    let edges = region.arc_edges();
    for &(u, s, v) in &edges {
        let (u2, v2) = (ids[vmap[pos_v(u)]], ids[vmap[pos_v(v)]]);
        let s2 = idx[smap[pos_s(s)]];
        let ok = edges
            .iter()
            .any(|&(a, t, b)| t == s2 && ((a == u2 && b == v2) || (a == v2 && b == u2)));
        if !ok {
            return Ok(f64::INFINITY);
        }
    }
    Ok(r_cycles.max(r_vertices))
}

/// The region rebuilt in a frame whose origin is its centroid, with the map
/// from that frame back to the original one.
fn recentred(region: &IntersectionRegion) -> Option<(IntersectionRegion, Isometry)> {
    let g = region.geometry();
    if g != Geometry::Hyperbolic {
        return None;
    }
    let c = region.centroid();
    if c.coords().z < RECENTRE_COSH {
        return None;
    }
    let frame = Isometry::transvection(&c);
    let back = frame.inverse();
    let phi = back.compose(&region.phi).ok()?;
    let psi = back.compose(&region.psi).ok()?;
    match intersect(&region.k, &phi, &region.l, &psi) {
        Ok(Intersection::Region(r)) if r.vertices().len() == region.vertices().len() => Some((*r, frame)),
        _ => None,
    }
}

/// `frame ∘ iso ∘ frame⁻¹`.
fn conjugate(frame: &Isometry, iso: &Isometry) -> Isometry {
    frame
        .compose(iso)
        .and_then(|m| m.compose(&frame.inverse()))
        .expect("frame and isometry share a geometry")
}

/// Finds the symmetries among the candidates with residual at most `tol`.
///
/// Regions far from the origin in H² are first moved next to it, where
/// distances can be evaluated without cancellation; the reported isometries
/// act on the original region.
pub fn detect(region: &IntersectionRegion, tol: f64) -> SymmetryReport {
    let moved = recentred(region);
    let (work, frame) = match &moved {
        Some((r, f)) => (r, Some(f)),
        None => (region, None),
    };
    let candidates = candidate_symmetries(work);
    let mut passed: Vec<(Isometry, f64)> = candidates
        .iter()
        .map(|iso| (*iso, verify(work, iso).unwrap_or(f64::INFINITY)))
        .filter(|&(_, r)| r <= tol)
        .collect();
    passed.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut kept: Vec<(Isometry, f64)> = Vec::new();
    for (iso, residual) in passed {
        let same = |k: &Isometry| {
            let scale = k.matrix().norm().max(iso.matrix().norm());
            classify(k) == classify(&iso) && k.matrix_distance(&iso) < MERGE_TOL * scale
        };
        if !kept.iter().any(|(k, _)| same(k)) {
            kept.push((iso, residual));
        }
    }
    let found: Vec<FoundSymmetry> = kept
        .into_iter()
        .map(|(iso, residual)| FoundSymmetry {
            kind: classify(&iso),
            iso: frame.map_or(iso, |f| conjugate(f, &iso)),
            residual,
        })
        .collect();
    let central = found.iter().any(|f| f.kind == SymmetryKind::Central);
    let axial = found.iter().any(|f| f.kind == SymmetryKind::Axial);
    SymmetryReport {
        has_nontrivial: !found.is_empty(),
        is_centrally_symmetric: central,
        is_axially_symmetric: axial,
        continuous_family: has_family(work),
        tolerance: tol,
        candidates: candidates.len(),
        found,
    }
}

/// Fraction of sample points whose membership differs from that of their image.
///
/// Samples a `grid × grid` lattice in exponential-map coordinates around the
/// centroid of the boundary; only the source regions are consulted.
pub fn raster_oracle(region: &IntersectionRegion, iso: &Isometry, grid: usize) -> f64 {
    let center = region.centroid();
    let radius = if region.is_bounded() {
        let mut r = 0.0f64;
        for a in region.arcs() {
            for p in a.sample(64) {
                r = r.max(distance(&center, &p).unwrap_or(0.0));
            }
        }
        1.02 * r
    } else {
        5.0
    };
    let grid = grid.max(2);
    let row = |i: usize| -> (usize, usize) {
        let u = -radius + 2.0 * radius * (i as f64 + 0.5) / grid as f64;
        let mut diff = 0;
        let mut any = 0;
        for j in 0..grid {
            let v = -radius + 2.0 * radius * (j as f64 + 0.5) / grid as f64;
            let x = center.exp(u, v);
            let a = region.source_membership(&x).is_inside();
            let b = region.source_membership(&iso.apply_raw(&x)).is_inside();
            if a || b {
                any += 1;
                if a != b {
                    diff += 1;
                }
            }
        }
        (diff, any)
    };
    #[cfg(feature = "parallel")]
    let (diff, any) = {
        use rayon::prelude::*;
        (0..grid)
            .into_par_iter()
            .map(row)
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    };
    #[cfg(not(feature = "parallel"))]
    let (diff, any) = (0..grid).map(row).fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if any == 0 {
        0.0
    } else {
        diff as f64 / any as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::intersect;
    use crate::regions::RegionSpec;
    use crate::spec::PointSpec;

    fn lens(g: Geometry, r: f64, d: f64) -> IntersectionRegion {
        let k = RegionSpec::Ball {
            geometry: g,
            center: PointSpec::default(),
            radius: r,
        }
        .build()
        .unwrap();
        let t = Isometry::translation(&Cycle::geodesic(g, std::f64::consts::FRAC_PI_2, 0.0), d).unwrap();
        let rot = Isometry::rotation(&Point::origin(g), 0.7);
        let psi = rot.compose(&t).unwrap();
        let res = intersect(&k, &rot, &k, &psi).unwrap();
        res.region().unwrap().clone()
    }

    #[test]
    fn bottleneck_assignment() {
        let cost = vec![vec![5.0, 1.0], vec![1.0, 4.0]];
        let (b, map) = assignment(&cost).unwrap();
        assert_eq!((b, map), (1.0, vec![1, 0]));
        let cost = vec![vec![3.0, 2.0, 9.0], vec![1.0, 8.0, 8.0], vec![7.0, 2.5, 4.0]];
        assert_eq!(assignment(&cost).unwrap().0, 4.0);
        assert!(assignment(&[vec![f64::INFINITY]]).is_none());
    }

    #[test]
    fn lens_symmetries() {
        for g in [Geometry::Euclidean, Geometry::Hyperbolic, Geometry::Spherical] {
            let r = lens(g, 0.7, 0.9);
            assert!(verify(&r, &Isometry::identity(g)).unwrap() < 1e-12);
            let cands = candidate_symmetries(&r);
            assert!(cands.len() >= 3);
            let rep = detect(&r, DEFAULT_TOL);
            assert!(rep.is_centrally_symmetric && rep.is_axially_symmetric, "{g:?}");
            assert!(rep.max_residual() < 1e-9);
            let wrong = Isometry::reflection(&Cycle::geodesic(g, 0.3, 0.05)).unwrap();
            assert!(verify(&r, &wrong).unwrap() > 0.1);
            for f in &rep.found {
                assert!(raster_oracle(&r, &f.iso, 128) < 1e-3);
            }
            assert!(raster_oracle(&r, &wrong, 128) > 0.05);
        }
    }

    #[test]
    fn incongruent_lens_is_only_axial() {
        let g = Geometry::Hyperbolic;
        let k = RegionSpec::Ball {
            geometry: g,
            center: PointSpec::default(),
            radius: 0.5,
        }
        .build()
        .unwrap();
        let l = RegionSpec::Ball {
            geometry: g,
            center: PointSpec::default(),
            radius: 0.9,
        }
        .build()
        .unwrap();
        let t = Isometry::translation(&Cycle::geodesic(g, 1.0, 0.0), 1.0).unwrap();
        let r = intersect(&k, &Isometry::identity(g), &l, &t).unwrap();
        let rep = detect(r.region().unwrap(), DEFAULT_TOL);
        assert!(rep.is_axially_symmetric && !rep.is_centrally_symmetric);
    }

    #[test]
    fn whole_disk_reports_a_family() {
        let g = Geometry::Euclidean;
        let k = RegionSpec::Ball {
            geometry: g,
            center: PointSpec::default(),
            radius: 0.5,
        }
        .build()
        .unwrap();
        let l = RegionSpec::Ball {
            geometry: g,
            center: PointSpec::default(),
            radius: 2.0,
        }
        .build()
        .unwrap();
        let id = Isometry::identity(g);
        let r = intersect(&k, &id, &l, &id).unwrap();
        let rep = detect(r.region().unwrap(), DEFAULT_TOL);
        assert!(rep.continuous_family && rep.is_centrally_symmetric && rep.is_axially_symmetric);
    }
}
