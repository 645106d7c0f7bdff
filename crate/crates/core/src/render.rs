//! SVG figures of regions and intersections in the classical disk models.
//!
//! Output is byte-for-byte deterministic: every coordinate is printed with six
//! decimals and elements are emitted in a fixed order.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cycles::{full_range, Cycle, CycleKind};
use crate::error::{Error, Result};
use crate::geom::{Geometry, IdealPoint, Isometry, Point, Vec3};
use crate::intersect::{intersect, Arc, Intersection, IntersectionRegion, Vertex};
use crate::regions::{ConvexRegion, RegionSpec};
use crate::spec::{compose_all, IsometrySpec};
use crate::symmetry::{detect, reflection_axis, reflection_center, DEFAULT_TOL};

/// A flat picture of one of the three planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Projective disk model of H²: geodesics are straight chords.
    Klein,
    /// Conformal disk model of H²: cycles are circles or circular arcs.
    Poincare,
    /// Stereographic chart of S² from the antipode of the origin.
    Stereographic,
    /// R² itself.
    Planar,
}

impl Model {
    pub fn geometry(self) -> Geometry {
        match self {
            Model::Klein | Model::Poincare => Geometry::Hyperbolic,
            Model::Stereographic => Geometry::Spherical,
            Model::Planar => Geometry::Euclidean,
        }
    }

    /// The natural model of a geometry (Poincaré for H²).
    pub fn default_for(g: Geometry) -> Model {
        match g {
            Geometry::Hyperbolic => Model::Poincare,
            Geometry::Spherical => Model::Stereographic,
            Geometry::Euclidean => Model::Planar,
        }
    }

    fn check(self, g: Geometry) -> Result<()> {
        if self.geometry() != g {
            return Err(Error::InvalidSpec(format!(
                "the {self:?} model cannot show {g:?} geometry"
            )));
        }
        Ok(())
    }

    /// Model coordinates of a point.
    pub fn project(self, p: &Point) -> [f64; 2] {
        match self {
            Model::Klein => p.klein(),
            _ => p.conformal(),
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "klein" => Ok(Model::Klein),
            "poincare" => Ok(Model::Poincare),
            "stereographic" => Ok(Model::Stereographic),
            "planar" => Ok(Model::Planar),
            _ => Err(Error::InvalidSpec(format!(
                "unknown model `{s}` (expected klein, poincare, stereographic or planar)"
            ))),
        }
    }
}

/// The image of a cycle in a conformal model: a circle, or `None` for a straight line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelCircle {
    pub center: [f64; 2],
    pub radius: f64,
}

/// Exact circle image of `cycle` in the Poincaré, stereographic or planar model.
pub fn model_circle(cycle: &Cycle, model: Model) -> Result<Option<ModelCircle>> {
    model.check(cycle.geometry())?;
    let n = cycle.normal();
    let h = cycle.offset();
    let circle = |center: [f64; 2], r2: f64| {
        Some(ModelCircle {
            center,
            radius: r2.max(0.0).sqrt(),
        })
    };
    Ok(match model {
        Model::Klein => {
            return Err(Error::InvalidSpec(
                "cycles are conics, not circles, in the Klein model".into(),
            ));
        }
        Model::Planar => match cycle.kind() {
            CycleKind::Line => None,
            _ => circle([n.x, n.y], h * h),
        },
        Model::Poincare => {
            // (h − n3)|w|² + 2 n·w − (n3 + h) = 0
            let a = h - n.z;
            if a.abs() < 1e-12 * (1.0 + n.norm() + h.abs()) {
                None
            } else {
                let c = [-n.x / a, -n.y / a];
                circle(c, c[0] * c[0] + c[1] * c[1] + (n.z + h) / a)
            }
        }
        Model::Stereographic => {
            // (n3 + h)|w|² − 2 n·w − (n3 − h) = 0
            let a = n.z + h;
            if a.abs() < 1e-12 * (1.0 + n.norm() + h.abs()) {
                None
            } else {
                let c = [n.x / a, n.y / a];
                circle(c, c[0] * c[0] + c[1] * c[1] + (n.z - h) / a)
            }
        }
    })
}

/// Figure settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderOptions {
    /// Width and height in pixels.
    pub size: u32,
    /// Polyline points per curve where no exact primitive exists.
    pub samples: usize,
    /// Half-width of the visible window in model units; chosen from the content if unset.
    pub extent: Option<f64>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            size: 512,
            samples: 256,
            extent: None,
        }
    }
}

/// What the `render` subcommand reads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "entity", rename_all = "snake_case")]
pub enum RenderSpec {
    Region {
        region: RegionSpec,
    },
    /// `φK ∩ ψL`; `phi` and `psi` are generator lists, the first applied last.
    Intersection {
        k: RegionSpec,
        #[serde(default)]
        phi: Vec<IsometrySpec>,
        l: RegionSpec,
        #[serde(default)]
        psi: Vec<IsometrySpec>,
        /// Overlay the symmetries found at this tolerance.
        #[serde(default)]
        symmetries: bool,
    },
}

impl RenderSpec {
    pub fn geometry(&self) -> Geometry {
        match self {
            RenderSpec::Region { region } => region.geometry(),
            RenderSpec::Intersection { k, .. } => k.geometry(),
        }
    }
}

/// Renders a [`RenderSpec`].
pub fn render_spec(spec: &RenderSpec, model: Model, opts: &RenderOptions) -> Result<String> {
    match spec {
        RenderSpec::Region { region } => render_region(&region.build()?, model, opts),
        RenderSpec::Intersection {
            k,
            phi,
            l,
            psi,
            symmetries,
        } => {
            let g = k.geometry();
            let (k, l) = (k.build()?, l.build()?);
            let (phi, psi) = (compose_all(g, phi)?, compose_all(g, psi)?);
            match intersect(&k, &phi, &l, &psi)? {
                Intersection::Region(r) => {
                    let overlay: Vec<Isometry> = if *symmetries {
                        detect(&r, DEFAULT_TOL).found.into_iter().map(|f| f.iso).collect()
                    } else {
                        Vec::new()
                    };
                    render_intersection(&r, model, opts, &overlay)
                }
                _ => Err(Error::NoIntersection("the two regions share no interior point".into())),
            }
        }
    }
}

/// Formats a coordinate; negative zero prints as zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Parameters along `[t0, t1]`. Infinite ends are reached through `2 atanh(u)`
/// with `u` uniform, which spaces H² samples evenly in the disk models.
fn params(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let reach = |s: f64| 2.0 * (REACH * s).atanh();
    (0..n)
        .map(|i| {
            let s = i as f64 / (n - 1) as f64;
            match (t0.is_finite(), t1.is_finite()) {
                (true, true) => t0 + (t1 - t0) * s,
                (true, false) => t0 + reach(s),
                (false, true) => t1 - reach(1.0 - s),
                (false, false) => reach(2.0 * s - 1.0),
            }
        })
        .collect()
}

struct Canvas {
    model: Model,
    geometry: Geometry,
    size: f64,
    extent: f64,
    samples: usize,
    defs: String,
    body: String,
    clip_count: usize,
}

impl Canvas {
    fn new(model: Model, opts: &RenderOptions, extent: f64) -> Canvas {
        Canvas {
            model,
            geometry: model.geometry(),
            size: opts.size as f64,
            extent,
            samples: opts.samples.max(8),
            defs: String::new(),
            body: String::new(),
            clip_count: 0,
        }
    }

    fn px(&self, w: [f64; 2]) -> [f64; 2] {
        let s = 0.5 * self.size / self.extent;
        [0.5 * self.size + w[0] * s, 0.5 * self.size - w[1] * s]
    }

    fn xy(&self, w: [f64; 2]) -> String {
        let p = self.px(w);
        format!("{} {}", num(p[0]), num(p[1]))
    }

    fn length(&self, r: f64) -> f64 {
        r * 0.5 * self.size / self.extent
    }

    /// Planar parameters for infinite ends are clipped well outside the window.
    fn far(&self) -> f64 {
        8.0 * self.extent + 10.0
    }

    fn clamp_param(&self, t: f64) -> f64 {
        if self.geometry == Geometry::Euclidean {
            t.clamp(-self.far(), self.far())
        } else {
            t
        }
    }

    /// Model position of the end of `cycle` reached as the parameter goes to `±∞`.
    fn ideal_end(&self, cycle: &Cycle, forward: bool) -> Option<[f64; 2]> {
        if self.geometry != Geometry::Hyperbolic {
            return None;
        }
        let ends = cycle.ideal_points();
        let probe = self.model.project(&cycle.point_at(if forward { 40.0 } else { -40.0 }));
        ends.iter().map(IdealPoint::boundary).min_by(|a, b| {
            let da = (a[0] - probe[0]).hypot(a[1] - probe[1]);
            let db = (b[0] - probe[0]).hypot(b[1] - probe[1]);
            da.total_cmp(&db)
        })
    }

    /// Model points along `cycle` on `[t0, t1]`, with ideal ends appended.
    fn trace(&self, cycle: &Cycle, t0: f64, t1: f64) -> Vec<[f64; 2]> {
        let mut pts = Vec::new();
        if !t0.is_finite() {
            pts.extend(self.ideal_end(cycle, false));
        }
        let (a, b) = (self.clamp_param(t0), self.clamp_param(t1));
        pts.extend(
            params(a, b, self.samples)
                .into_iter()
                .map(|t| cycle.point_at(t))
                .filter(|p| self.geometry != Geometry::Spherical || p.coords().z > -1.0 + 1e-9)
                .map(|p| self.model.project(&p)),
        );
        if !t1.is_finite() {
            pts.extend(self.ideal_end(cycle, true));
        }
        pts
    }

    fn polyline(&self, pts: &[[f64; 2]], close: bool) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            d.push_str(if i == 0 { "M " } else { " L " });
            d.push_str(&self.xy(*p));
        }
        if close {
            d.push_str(" Z");
        }
        d
    }

    /// Path data for the piece of `cycle` on `[t0, t1]`.
    fn curve(&self, cycle: &Cycle, t0: f64, t1: f64) -> String {
        let whole = cycle.is_closed() && (t1 - t0) >= TAU - 1e-12;
        let paracycle = cycle.kind() == CycleKind::Paracycle && !t0.is_finite() && !t1.is_finite();
        if self.model == Model::Klein {
            if cycle.is_straight() {
                let pts = self.trace(cycle, t0, t1);
                return self.polyline(&[pts[0], pts[pts.len() - 1]], false);
            }
            return self.polyline(&self.trace(cycle, t0, t1), whole || paracycle);
        }
        let exact = model_circle(cycle, self.model).ok().flatten();
        if whole || paracycle {
            return match exact {
                Some(c) => {
                    // two half-circle arcs
                    let (x, y, r) = (c.center[0], c.center[1], c.radius);
                    let rr = num(self.length(r));
                    format!(
                        "M {} A {rr} {rr} 0 1 0 {} A {rr} {rr} 0 1 0 {} Z",
                        self.xy([x + r, y]),
                        self.xy([x - r, y]),
                        self.xy([x + r, y])
                    )
                }
                None => self.polyline(&self.trace(cycle, t0, t1), true),
            };
        }
        let pts = self.trace(cycle, t0, t1);
        let (s, e) = (pts[0], pts[pts.len() - 1]);
        let mid_t = match (t0.is_finite(), t1.is_finite()) {
            (true, true) => 0.5 * (t0 + t1),
            (true, false) => t0 + 1.0,
            (false, true) => t1 - 1.0,
            (false, false) => 0.0,
        };
        let m = self.model.project(&cycle.point_at(mid_t));
        match exact {
            Some(c) if c.radius < 1e4 * self.extent => {
                let (ps, pm, pe, pc) = (self.px(s), self.px(m), self.px(e), self.px(c.center));
                let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
                    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
                };
                let sweep = (cross(ps, pm, pe) > 0.0) as u8;
                let large = (cross(ps, pe, pm).signum() == cross(ps, pe, pc).signum()) as u8;
                let rr = num(self.length(c.radius));
                format!("M {} A {rr} {rr} 0 {large} {sweep} {}", self.xy(s), self.xy(e))
            }
            _ if cycle.is_straight() => self.polyline(&[s, e], false),
            _ => self.polyline(&pts, false),
        }
    }

    /// Closed outline of the convex side of `cycle`, and whether it is the outside of that outline.
    fn side(&self, cycle: &Cycle) -> (Vec<[f64; 2]>, bool) {
        let g = self.geometry;
        let (t0, t1) = full_range(cycle);
        match g {
            Geometry::Euclidean if cycle.kind() == CycleKind::Line => {
                let u = cycle.normal();
                let h = cycle.offset();
                let big = self.far();
                let f = [h * u.x, h * u.y];
                let d = [-u.y, u.x];
                let at = |a: f64, b: f64| [f[0] + a * d[0] - b * u.x, f[1] + a * d[1] - b * u.y];
                (vec![at(big, 0.0), at(-big, 0.0), at(-big, big), at(big, big)], false)
            }
            Geometry::Spherical => {
                let south = Point::from_normalized(g, Vec3::new(0.0, 0.0, -1.0));
                let outside = cycle.inside_value(&south) > 0.0;
                (self.trace(cycle, t0, t1), outside)
            }
            Geometry::Hyperbolic if !cycle.is_closed() && cycle.kind() != CycleKind::Paracycle => {
                let mut pts = self.trace(cycle, t0, t1);
                let (a, b) = (pts[0], pts[pts.len() - 1]);
                let (ta, tb) = (a[1].atan2(a[0]), b[1].atan2(b[0]));
                let ccw = (ta - tb).rem_euclid(TAU);
                let mid = tb + 0.5 * ccw;
                let v = Vec3::new(mid.cos(), mid.sin(), 1.0);
                let sweep = if g.form(&v, cycle.normal()) < 0.0 {
                    ccw
                } else {
                    ccw - TAU
                };
                let steps = 64;
                for i in 0..=steps {
                    let t = tb + sweep * i as f64 / steps as f64;
                    pts.push([1.1 * t.cos(), 1.1 * t.sin()]);
                }
                (pts, false)
            }
            _ => (self.trace(cycle, t0, t1), false),
        }
    }

    /// Registers a clip path for the convex side of `cycle` and returns its id.
    fn side_clip(&mut self, cycle: &Cycle) -> String {
        let (pts, outside) = self.side(cycle);
        let id = format!("side{}", self.clip_count);
        self.clip_count += 1;
        let mut d = self.polyline(&pts, true);
        if outside {
            let s = self.size;
            d.push_str(&format!(
                " M {} {} L {} {} L {} {} L {} {} Z",
                num(-s),
                num(-s),
                num(2.0 * s),
                num(-s),
                num(2.0 * s),
                num(2.0 * s),
                num(-s),
                num(2.0 * s)
            ));
        }
        let _ = writeln!(
            self.defs,
            "<clipPath id=\"{id}\"><path clip-rule=\"evenodd\" d=\"{d}\"/></clipPath>"
        );
        id
    }

    /// Fills the intersection of the convex sides of `supports`.
    fn fill(&mut self, supports: &[Cycle], color: &str) {
        let ids: Vec<String> = supports.iter().map(|c| self.side_clip(c)).collect();
        for id in &ids {
            let _ = writeln!(self.body, "<g clip-path=\"url(#{id})\">");
        }
        let s = num(self.size);
        let _ = writeln!(
            self.body,
            "<rect x=\"0\" y=\"0\" width=\"{s}\" height=\"{s}\" fill=\"{color}\"/>"
        );
        for _ in &ids {
            self.body.push_str("</g>\n");
        }
    }

    fn stroke(&mut self, d: &str, style: &str) {
        let _ = writeln!(self.body, "<path d=\"{d}\" fill=\"none\" {style}/>");
    }

    fn dot(&mut self, w: [f64; 2], r: f64, color: &str) {
        let p = self.px(w);
        let _ = writeln!(
            self.body,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{color}\"/>",
            num(p[0]),
            num(p[1]),
            num(r)
        );
    }

    fn frame(&self) -> String {
        let c = num(0.5 * self.size);
        let r = num(self.length(1.0));
        match self.geometry {
            Geometry::Hyperbolic => {
                format!("<clipPath id=\"model\"><circle cx=\"{c}\" cy=\"{c}\" r=\"{r}\"/></clipPath>\n")
            }
            _ => String::new(),
        }
    }

    fn finish(self) -> String {
        let s = num(self.size);
        let mut out = String::new();
        let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{s}\" height=\"{s}\" viewBox=\"0 0 {s} {s}\">"
        );
        let _ = writeln!(out, "<defs>\n{}{}</defs>", self.frame(), self.defs);
        let _ = writeln!(
            out,
            "<rect x=\"0\" y=\"0\" width=\"{s}\" height=\"{s}\" fill=\"#ffffff\"/>"
        );
        let c = num(0.5 * self.size);
        let r = num(self.length(1.0));
        match self.geometry {
            Geometry::Hyperbolic => {
                let _ = writeln!(out, "<circle cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"#f4f4f4\" stroke=\"#444444\" stroke-width=\"1.5\"/>");
                let _ = writeln!(out, "<g clip-path=\"url(#model)\">\n{}</g>", self.body);
            }
            Geometry::Spherical => {
                let _ = writeln!(out, "<circle cx=\"{c}\" cy=\"{c}\" r=\"{r}\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 4\"/>");
                out.push_str(&self.body);
            }
            Geometry::Euclidean => out.push_str(&self.body),
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Samples stop about 36 units out, indistinguishable from the ideal end.
const REACH: f64 = 0.999_999_999_999_999_5;

const FILL: &str = "#9ec5e8";
const EDGE: &str = "stroke=\"#1f4e79\" stroke-width=\"2.5\"";
const SOURCE: &str = "stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"5 3\"";
const AXIS: &str = "stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"8 4\"";

fn extent_for(model: Model, points: &[[f64; 2]], opts: &RenderOptions) -> f64 {
    if let Some(e) = opts.extent {
        return e;
    }
    match model {
        Model::Klein | Model::Poincare => 1.05,
        _ => {
            let m = points.iter().map(|p| p[0].abs().max(p[1].abs())).fold(0.0, f64::max);
            (1.25 * m).clamp(1.2, 50.0)
        }
    }
}

/// Anchors used to size the window: finite vertices, circle extremes, line feet.
fn anchors(model: Model, cycles: &[Cycle], extra: &[Point]) -> Vec<[f64; 2]> {
    let mut out: Vec<[f64; 2]> = extra.iter().map(|p| model.project(p)).collect();
    for c in cycles {
        match model_circle(c, model) {
            Ok(Some(mc)) if model != Model::Klein && c.is_closed() => {
                let [x, y] = mc.center;
                let r = mc.radius;
                out.extend([[x + r, y], [x - r, y], [x, y + r], [x, y - r]]);
            }
            _ if c.geometry() == Geometry::Euclidean && c.kind() == CycleKind::Line => {
                out.push([c.offset() * c.normal().x, c.offset() * c.normal().y]);
            }
            _ => {}
        }
    }
    out
}

/// Draws a region: its interior filled, its boundary components stroked.
pub fn render_region(region: &ConvexRegion, model: Model, opts: &RenderOptions) -> Result<String> {
    model.check(region.geometry())?;
    let comps = region.components();
    let extent = extent_for(model, &anchors(model, comps, &[*region.witness()]), opts);
    let mut cv = Canvas::new(model, opts, extent);
    cv.fill(comps, FILL);
    for c in comps {
        let (t0, t1) = full_range(c);
        let d = cv.curve(c, t0, t1);
        cv.stroke(&d, EDGE);
    }
    Ok(cv.finish())
}

fn arc_path(cv: &Canvas, a: &Arc) -> String {
    cv.curve(&a.support, a.t0, a.t1)
}

/// Draws `φK ∩ ψL` with the source boundaries dashed, vertices dotted and the
/// given symmetries overlaid (reflection axes dashed, centres as dots).
pub fn render_intersection(
    region: &IntersectionRegion,
    model: Model,
    opts: &RenderOptions,
    symmetries: &[Isometry],
) -> Result<String> {
    model.check(region.geometry())?;
    let supports = region.supports();
    let boundary: Vec<Cycle> = region.boundary_supports().into_iter().map(|i| supports[i]).collect();
    let extent = extent_for(model, &anchors(model, &boundary, &region.finite_vertices()), opts);
    let mut cv = Canvas::new(model, opts, extent);
    for c in supports {
        let (t0, t1) = full_range(c);
        let d = cv.curve(c, t0, t1);
        cv.stroke(&d, SOURCE);
    }
    cv.fill(supports, FILL);
    for a in region.arcs() {
        let d = arc_path(&cv, a);
        cv.stroke(&d, EDGE);
    }
    for iso in symmetries {
        if let Some(axis) = reflection_axis(iso) {
            let (t0, t1) = full_range(&axis);
            let d = cv.curve(&axis, t0, t1);
            cv.stroke(&d, AXIS);
        } else if let Some(c) = reflection_center(iso) {
            let w = model.project(&c);
            cv.dot(w, 5.0, "#c0392b");
        }
    }
    for v in region.vertices() {
        match v {
            Vertex::Finite(p) => {
                let w = model.project(&p);
                cv.dot(w, 3.5, "#1f4e79");
            }
            Vertex::Ideal(p) if region.geometry() == Geometry::Hyperbolic => cv.dot(p.boundary(), 3.5, "#1f4e79"),
            Vertex::Ideal(_) => {}
        }
    }
    Ok(cv.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::HalfSide;
    use crate::spec::{GeodesicSpec, PointSpec};
    use std::f64::consts::PI;

    const H: Geometry = Geometry::Hyperbolic;

    #[test]
    fn paracycle_image_is_internally_tangent() {
        for &(angle, depth) in &[(0.0f64, 0.0f64), (1.3, 0.7), (-2.0, -1.5)] {
            let c = Cycle::paracycle(&IdealPoint::at_angle(H, angle), &Point::polar(H, 0.4, depth.abs())).unwrap();
            let m = model_circle(&c, Model::Poincare).unwrap().unwrap();
            let reach = m.center[0].hypot(m.center[1]) + m.radius;
            assert!((reach - 1.0).abs() < 1e-6, "{reach}");
        }
    }

    #[test]
    fn conformal_circles_match_samples() {
        let c = Cycle::circle(&Point::polar(H, 0.3, 1.1), 0.6).unwrap();
        let m = model_circle(&c, Model::Poincare).unwrap().unwrap();
        for i in 0..16 {
            let w = Model::Poincare.project(&c.point_at(-PI + TAU * i as f64 / 16.0));
            let r = (w[0] - m.center[0]).hypot(w[1] - m.center[1]);
            assert!((r - m.radius).abs() < 1e-12);
        }
        let s = Cycle::circle(&Point::polar(Geometry::Spherical, 1.0, 0.8), 0.5).unwrap();
        let m = model_circle(&s, Model::Stereographic).unwrap().unwrap();
        let w = Model::Stereographic.project(&s.point_at(0.4));
        assert!(((w[0] - m.center[0]).hypot(w[1] - m.center[1]) - m.radius).abs() < 1e-12);
    }

    #[test]
    fn klein_geodesic_is_a_chord() {
        let spec = RegionSpec::HalfPlane {
            geometry: H,
            line: GeodesicSpec::Ideal { ideal: [0.3, 2.0] },
            side: HalfSide::Near,
        };
        let svg = render_region(&spec.build().unwrap(), Model::Klein, &RenderOptions::default()).unwrap();
        let edge = svg.lines().find(|l| l.contains("stroke-width=\"2.5\"")).unwrap();
        assert_eq!(edge.matches(" L ").count(), 1, "{edge}");
        assert!(!edge.contains(" A "));
    }

    #[test]
    fn euclidean_disk_is_a_circle() {
        let spec = RegionSpec::Ball {
            geometry: Geometry::Euclidean,
            center: PointSpec::default(),
            radius: 1.0,
        };
        let svg = render_region(&spec.build().unwrap(), Model::Planar, &RenderOptions::default()).unwrap();
        let edge = svg.lines().find(|l| l.contains("stroke-width=\"2.5\"")).unwrap();
        assert!(edge.contains(" A "));
        assert!(render_region(&spec.build().unwrap(), Model::Klein, &RenderOptions::default()).is_err());
    }

    #[test]
    fn output_is_deterministic() {
        let spec: RenderSpec = serde_json::from_str(
            r#"{"entity": "intersection",
                "k": {"kind": "ball", "geometry": "hyperbolic", "center": [0, 0, 1], "radius": 0.8},
                "l": {"kind": "ball", "geometry": "hyperbolic", "center": {"angle": 0.5, "distance": 0.6}, "radius": 0.8},
                "symmetries": true}"#,
        )
        .unwrap();
        let a = render_spec(&spec, Model::Poincare, &RenderOptions::default()).unwrap();
        let b = render_spec(&spec, Model::Poincare, &RenderOptions::default()).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("#c0392b"));
        assert!(!a.contains("NaN") && !a.contains("inf"));
    }
}
