//! Intersection of two congruent copies of convex regions, traced as arcs.

use std::f64::consts::{PI, TAU};

use crate::cycles::Cycle;
use crate::error::{Error, Result};
use crate::geom::{distance, renormalize, Geometry, IdealPoint, Isometry, Point, Vec3};
use crate::regions::{ConvexRegion, Membership};

/// Tolerance for merging vertices and crossing parameters.
pub const VERTEX_TOL: f64 = 1e-9;
/// Margin below which an arc midpoint is too close to another boundary to classify.
const MIDPOINT_MARGIN: f64 = 1e-9;
/// Parameter half-width used to sample arcs that run off to infinity.
const OPEN_WINDOW: f64 = 3.0;
/// Largest hyperboloid height of a finite H² boundary vertex; beyond it a vertex
/// cannot be told apart from the ideal point it approaches.
const FAR_VERTEX: f64 = 1e6;

/// A corner of the intersection or an end at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Vertex {
    Finite(Point),
    Ideal(IdealPoint),
}

impl Vertex {
    pub fn is_ideal(&self) -> bool {
        matches!(self, Vertex::Ideal(_))
    }

    fn same(&self, other: &Vertex) -> bool {
        match (self, other) {
            (Vertex::Finite(a), Vertex::Finite(b)) => same_point(a, b),
            (Vertex::Ideal(a), Vertex::Ideal(b)) => a.boundary_distance(b) < VERTEX_TOL,
            _ => false,
        }
    }
}

fn same_point(a: &Point, b: &Point) -> bool {
    (a.coords() - b.coords()).norm() < VERTEX_TOL * (1.0 + a.coords().norm())
}

/// A piece of a supporting cycle on the boundary of the intersection.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub support: Cycle,
    /// Index into [`IntersectionRegion::supports`].
    pub support_index: usize,
    /// Parameter interval on `support`, `t0 < t1`; either end may be infinite.
    pub t0: f64,
    pub t1: f64,
    pub start: Vertex,
    pub end: Vertex,
    /// Traversal along increasing parameter.
    pub forward: bool,
    /// The whole closed cycle.
    pub whole: bool,
    pub(crate) start_id: usize,
    pub(crate) end_id: usize,
}

impl Arc {
    /// Finite parameter window covering the arc (infinite ends are clipped).
    pub fn window(&self) -> (f64, f64) {
        match (self.t0.is_finite(), self.t1.is_finite()) {
            (true, true) => (self.t0, self.t1),
            (true, false) => (self.t0, self.t0 + OPEN_WINDOW),
            (false, true) => (self.t1 - OPEN_WINDOW, self.t1),
            (false, false) => (-OPEN_WINDOW, OPEN_WINDOW),
        }
    }

    /// `n ≥ 2` points along the arc, including finite endpoints, in parameter order.
    /// A whole cycle gets `n` evenly spaced points without repeating the start.
    pub fn sample(&self, n: usize) -> Vec<Point> {
        let (a, b) = self.window();
        let n = n.max(2);
        let steps = if self.whole { n } else { n - 1 };
        (0..n)
            .map(|i| self.support.point_at(a + (b - a) * i as f64 / steps as f64))
            .collect()
    }

    pub fn midpoint(&self) -> Point {
        let (a, b) = self.window();
        self.support.point_at(0.5 * (a + b))
    }

    pub fn is_bounded(&self) -> bool {
        self.t0.is_finite() && self.t1.is_finite()
    }
}

/// Arcs joined end to end.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub arcs: Vec<Arc>,
    /// The walk returns to its first vertex (through ideal vertices if needed).
    pub closed: bool,
}

impl Chain {
    /// Vertices in walk order.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .arcs
            .iter()
            .map(|a| if a.forward { a.start } else { a.end })
            .collect();
        if !self.closed {
            if let Some(a) = self.arcs.last() {
                out.push(if a.forward { a.end } else { a.start });
            }
        }
        out
    }
}

/// `(φK) ∩ (ψL)` with interior.
#[derive(Debug, Clone)]
pub struct IntersectionRegion {
    geometry: Geometry,
    /// Distinct supporting cycles of both transported regions.
    supports: Vec<Cycle>,
    pub chains: Vec<Chain>,
    pub whole_components: Vec<Arc>,
    vertex_table: Vec<Vertex>,
    witness: Point,
    pub k: ConvexRegion,
    pub phi: Isometry,
    pub l: ConvexRegion,
    pub psi: Isometry,
    a: ConvexRegion,
    b: ConvexRegion,
}

/// Outcome of [`intersect`].
#[derive(Debug, Clone)]
pub enum Intersection {
    Region(Box<IntersectionRegion>),
    Empty,
    /// A point, a segment or a line: no interior.
    NoInterior,
}

impl Intersection {
    pub fn region(&self) -> Option<&IntersectionRegion> {
        match self {
            Intersection::Region(r) => Some(r),
            _ => None,
        }
    }
}

struct Crossing {
    t: f64,
    vertex: usize,
}

fn vertex_id(table: &mut Vec<Vertex>, v: Vertex) -> usize {
    if let Some(i) = table.iter().position(|w| w.same(&v)) {
        return i;
    }
    table.push(v);
    table.len() - 1
}

/// Intersects `φK` with `ψL`.
pub fn intersect(k: &ConvexRegion, phi: &Isometry, l: &ConvexRegion, psi: &Isometry) -> Result<Intersection> {
    let g = k.geometry();
    g.expect(l.geometry())?;
    g.expect(phi.geometry())?;
    g.expect(psi.geometry())?;
    let a = k.transform(phi)?;
    let b = l.transform(psi)?;

    let mut supports: Vec<Cycle> = a.components().to_vec();
    for c in b.components() {
        match supports.iter().find(|s| s.same_section(c, 1e-10)) {
            None => supports.push(*c),
            // same curve with the other side kept: the intersection lies on it
            Some(s) if s.is_straight() && c.normal().dot(s.normal()) < 0.0 => return Ok(Intersection::NoInterior),
            Some(_) => {}
        }
    }

    let mut table: Vec<Vertex> = Vec::new();
    let mut crossings: Vec<Vec<Crossing>> = supports.iter().map(|_| Vec::new()).collect();
    let mut touchings: Vec<Point> = Vec::new();
    for i in 0..supports.len() {
        for j in i + 1..supports.len() {
            let res = match supports[i].cycle_points(&supports[j]) {
                Ok(r) => r,
                Err(Error::CoincidentCycles) => continue,
                Err(e) => return Err(e),
            };
            if res.near_tangent {
                return Err(Error::Unstable("two supporting cycles are nearly tangent".into()));
            }
            if res.tangent {
                touchings.extend(res.points);
                continue;
            }
            for p in res.points {
                let id = vertex_id(&mut table, Vertex::Finite(p));
                crossings[i].push(Crossing {
                    t: supports[i].param_of(&p),
                    vertex: id,
                });
                crossings[j].push(Crossing {
                    t: supports[j].param_of(&p),
                    vertex: id,
                });
            }
        }
    }

    let inside_others = |i: usize, p: &Point| -> f64 {
        supports
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| c.inside_value(p))
            .fold(f64::INFINITY, f64::min)
    };

    let mut arcs: Vec<Arc> = Vec::new();
    for (i, s) in supports.iter().enumerate() {
        let list = &mut crossings[i];
        list.sort_by(|x, y| x.t.total_cmp(&y.t));
        list.dedup_by(|x, y| x.vertex == y.vertex);
        if list.windows(2).any(|w| (w[1].t - w[0].t).abs() < VERTEX_TOL) {
            return Err(Error::Unstable("distinct crossings at the same parameter".into()));
        }
        // intervals as (t0, t1, start vertex, end vertex)
        let mut intervals: Vec<(f64, f64, Option<usize>, Option<usize>)> = Vec::new();
        if s.is_closed() {
            if list.is_empty() {
                intervals.push((-PI, PI, None, None));
            } else {
                for w in 0..list.len() {
                    let x = &list[w];
                    let (t1, v1) = match list.get(w + 1) {
                        Some(y) => (y.t, y.vertex),
                        None => (list[0].t + TAU, list[0].vertex),
                    };
                    intervals.push((x.t, t1, Some(x.vertex), Some(v1)));
                }
            }
        } else {
            let mut prev = (f64::NEG_INFINITY, None);
            for x in list.iter() {
                intervals.push((prev.0, x.t, prev.1, Some(x.vertex)));
                prev = (x.t, Some(x.vertex));
            }
            intervals.push((prev.0, f64::INFINITY, prev.1, None));
        }
        for (t0, t1, v0, v1) in intervals {
            // membership is constant along the interval except at touching points
            let probes = match (t0.is_finite(), t1.is_finite()) {
                (true, true) => [0.5, 0.25, 0.75].map(|f| t0 + f * (t1 - t0)),
                (true, false) => [1.0, 0.5, 2.0].map(|d| t0 + d),
                (false, true) => [1.0, 0.5, 2.0].map(|d| t1 - d),
                (false, false) => [0.0, -1.0, 1.0],
            };
            let Some(m) = probes
                .iter()
                .map(|&t| inside_others(i, &s.point_at(t)))
                .find(|m| m.abs() >= MIDPOINT_MARGIN)
            else {
                return Err(Error::Unstable("an arc runs along another boundary".into()));
            };
            if m < 0.0 {
                continue;
            }
            let whole = s.is_closed() && v0.is_none();
            let end_vertex = |v: Option<usize>, forward: bool, t: f64, table: &mut Vec<Vertex>| match v {
                Some(id) => id,
                None if s.is_closed() => vertex_id(table, Vertex::Finite(s.point_at(t))),
                None => vertex_id(table, Vertex::Ideal(s.ideal_end(forward).expect("open cycle"))),
            };
            let start_id = end_vertex(v0, false, t0, &mut table);
            let end_id = end_vertex(v1, true, t1, &mut table);
            arcs.push(Arc {
                support: *s,
                support_index: i,
                t0,
                t1,
                start: table[start_id],
                end: table[end_id],
                forward: true,
                whole,
                start_id,
                end_id,
            });
        }
    }

    let inside_both = |p: &Point| a.contains(p).is_inside() && b.contains(p).is_inside();
    if arcs.is_empty() {
        return Ok(if touchings.iter().any(inside_both) {
            Intersection::NoInterior
        } else {
            Intersection::Empty
        });
    }

    let (whole_components, open): (Vec<Arc>, Vec<Arc>) = arcs.into_iter().partition(|a| a.whole);
    let chains = link(&open, &table)?;

    let mut region = IntersectionRegion {
        geometry: g,
        supports,
        chains,
        whole_components,
        vertex_table: table,
        witness: Point::origin(g),
        k: k.clone(),
        phi: *phi,
        l: l.clone(),
        psi: *psi,
        a,
        b,
    };
    match region.find_witness() {
        Some(w) => {
            region.witness = w;
            Ok(Intersection::Region(Box::new(region)))
        }
        None => Ok(Intersection::NoInterior),
    }
}

/// Joins arcs sharing end vertices into chains.
fn link(arcs: &[Arc], table: &[Vertex]) -> Result<Vec<Chain>> {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); table.len()];
    for (k, a) in arcs.iter().enumerate() {
        incident[a.start_id].push(k);
        incident[a.end_id].push(k);
    }
    for (v, list) in incident.iter().enumerate() {
        if let Vertex::Finite(p) = &table[v] {
            if !list.is_empty() && p.geometry() == Geometry::Hyperbolic && p.coords()[2] > FAR_VERTEX {
                return Err(Error::Unstable("a boundary vertex lies too far out".into()));
            }
        }
        let bad = match table[v] {
            Vertex::Finite(_) => !list.is_empty() && list.len() != 2,
            Vertex::Ideal(_) => list.len() > 2,
        };
        if bad {
            return Err(Error::Unstable(format!("a boundary vertex meets {} arcs", list.len())));
        }
    }
    let mut used = vec![false; arcs.len()];
    let mut chains = Vec::new();
    let walk = |start_vertex: usize, first: usize, used: &mut Vec<bool>| -> (Vec<Arc>, bool) {
        let mut out = Vec::new();
        let mut v = start_vertex;
        let mut next = Some(first);
        while let Some(k) = next {
            used[k] = true;
            let mut arc = arcs[k].clone();
            arc.forward = arc.start_id == v;
            v = if arc.forward { arc.end_id } else { arc.start_id };
            out.push(arc);
            next = incident[v].iter().copied().find(|&j| !used[j]);
        }
        (out, v == start_vertex)
    };
    // open chains start at ideal vertices of degree one
    for v in 0..table.len() {
        if incident[v].len() == 1 && !used[incident[v][0]] {
            let (arcs, _) = walk(v, incident[v][0], &mut used);
            chains.push(Chain { arcs, closed: false });
        }
    }
    for k in 0..arcs.len() {
        if !used[k] {
            let (arcs, closed) = walk(arcs[k].start_id, k, &mut used);
            chains.push(Chain { arcs, closed });
        }
    }
    Ok(chains)
}

impl IntersectionRegion {
    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// Distinct supporting cycles of `φK` and `ψL` (not all need carry an arc).
    pub fn supports(&self) -> &[Cycle] {
        &self.supports
    }

    /// An interior point.
    pub fn witness(&self) -> &Point {
        &self.witness
    }

    /// The transported regions `φK` and `ψL`.
    pub fn sources(&self) -> (&ConvexRegion, &ConvexRegion) {
        (&self.a, &self.b)
    }

    /// All arcs: chain arcs in walk order, then whole components.
    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.chains
            .iter()
            .flat_map(|c| c.arcs.iter())
            .chain(self.whole_components.iter())
    }

    /// Indices of supports carrying at least one arc, ascending.
    pub fn boundary_supports(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.arcs().map(|a| a.support_index).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Chain vertices, finite first, then ideal.
    pub fn vertices(&self) -> Vec<Vertex> {
        let (fin, ideal): (Vec<usize>, Vec<usize>) = self
            .vertex_ids()
            .into_iter()
            .partition(|&i| !self.vertex_table[i].is_ideal());
        fin.into_iter().chain(ideal).map(|i| self.vertex_table[i]).collect()
    }

    /// Ids of vertices used by chain arcs, ascending.
    pub(crate) fn vertex_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .chains
            .iter()
            .flat_map(|c| c.arcs.iter())
            .flat_map(|a| [a.start_id, a.end_id])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub(crate) fn vertex(&self, id: usize) -> &Vertex {
        &self.vertex_table[id]
    }

    /// `(start vertex, support, end vertex)` for every chain arc.
    pub(crate) fn arc_edges(&self) -> Vec<(usize, usize, usize)> {
        self.chains
            .iter()
            .flat_map(|c| c.arcs.iter())
            .map(|a| (a.start_id, a.support_index, a.end_id))
            .collect()
    }

    pub fn finite_vertices(&self) -> Vec<Point> {
        self.vertices()
            .into_iter()
            .filter_map(|v| match v {
                Vertex::Finite(p) => Some(p),
                _ => None,
            })
            .collect()
    }

    pub fn ideal_vertices(&self) -> Vec<IdealPoint> {
        self.vertices()
            .into_iter()
            .filter_map(|v| match v {
                Vertex::Ideal(p) => Some(p),
                _ => None,
            })
            .collect()
    }

    pub fn is_bounded(&self) -> bool {
        self.arcs().all(|a| a.is_bounded())
    }

    /// Largest distance between boundary samples (`+∞` if unbounded).
    pub fn diameter(&self, samples: usize) -> f64 {
        if !self.is_bounded() {
            return f64::INFINITY;
        }
        let mut pts = self.finite_vertices();
        for a in self.arcs() {
            pts.extend(a.sample(samples));
        }
        let mut best = 0.0f64;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                best = best.max(distance(p, q).unwrap_or(0.0));
            }
        }
        best
    }

    /// Membership decided from the traced boundary: the convex sides of the arc supports.
    pub fn membership(&self, p: &Point) -> Membership {
        let d = self
            .boundary_supports()
            .into_iter()
            .map(|i| self.supports[i].inside_value(p))
            .fold(f64::INFINITY, f64::min);
        if d > crate::regions::BOUNDARY_BAND {
            Membership::Interior
        } else if d >= -crate::regions::BOUNDARY_BAND {
            Membership::Boundary
        } else {
            Membership::Exterior
        }
    }

    /// Membership in `φK ∩ ψL` via the source regions.
    pub fn source_membership(&self, p: &Point) -> Membership {
        match (self.a.contains(p), self.b.contains(p)) {
            (Membership::Exterior, _) | (_, Membership::Exterior) => Membership::Exterior,
            (Membership::Interior, Membership::Interior) => Membership::Interior,
            _ => Membership::Boundary,
        }
    }

    fn interior(&self, p: &Point) -> bool {
        self.a.contains(p) == Membership::Interior && self.b.contains(p) == Membership::Interior
    }

    fn find_witness(&self) -> Option<Point> {
        let mut sum = Vec3::zeros();
        for a in self.arcs() {
            for p in a.sample(16) {
                sum += p.coords();
            }
        }
        let mut candidates = Vec::new();
        if let Some(x) = renormalize(self.geometry, &sum.map(|c| c / self.arcs().count().max(1) as f64)) {
            candidates.push(Point::from_normalized(self.geometry, x));
        }
        candidates.push(*self.a.witness());
        candidates.push(*self.b.witness());
        for a in self.arcs() {
            let m = a.midpoint();
            if let Ok(mid) = m.midpoint(self.a.witness()) {
                candidates.push(mid);
            }
            if let Ok(mid) = m.midpoint(self.b.witness()) {
                candidates.push(mid);
            }
        }
        candidates.into_iter().find(|p| self.interior(p))
    }

    /// Centroid of boundary samples, used to anchor sampling grids.
    pub fn centroid(&self) -> Point {
        let mut sum = Vec3::zeros();
        for a in self.arcs() {
            for p in a.sample(32) {
                sum += p.coords();
            }
        }
        renormalize(self.geometry, &sum)
            .map(|x| Point::from_normalized(self.geometry, x))
            .unwrap_or(self.witness)
    }
}
