//! Curves of constant geodesic curvature as plane sections of the model surface.
//!
//! For σ = ±1 a cycle is `{x : B(x, n) = h}` on the sphere or the upper sheet
//! of the hyperboloid, stored in a canonical form that fixes both the scaling
//! of `(n, h)` and which side is convex:
//!
//! | geometry | kind        | normal `n`                         | offset `h`      | convex side |
//! |----------|-------------|------------------------------------|-----------------|-------------|
//! | S²       | circle      | centre, `‖n‖ = 1`                  | `cos r ∈ [0,1)` | `≥`         |
//! | H²       | circle      | centre, `B(n,n) = −1`, `n3 > 0`     | `−cosh r`       | `≥`         |
//! | H²       | paracycle   | ideal centre, `B(n,n) = 0`, `n3 = 1` | `h < 0`         | `≥`         |
//! | H²       | hypercycle  | `B(n,n) = 1`, base line `{B(x,n)=0}` | `sinh l > 0`    | `≤`         |
//! | H²       | geodesic    | `B(n,n) = 1`, outward              | `0`             | `≤`         |
//!
//! In R² a line is `{u·x = h}` with unit outward normal `u` (`n3 = 0`), and a
//! circle is stored as its centre `(c1, c2, 1)` in `normal` with the radius in
//! `offset`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{renormalize, Geometry, IdealPoint, Isometry, Mat3, Point, Vec3};

/// Which side of the section value is the convex side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `{x : side(x) ≤ 0}`.
    Below,
    /// `{x : side(x) ≥ 0}`.
    Above,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Below => Side::Above,
            Side::Above => Side::Below,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CycleKind {
    Circle {
        radius: f64,
    },
    Paracycle,
    Hypercycle {
        distance: f64,
    },
    /// A straight line of H².
    Geodesic,
    /// A straight line of R².
    Line,
}

/// Root half-separation below which two crossings collapse into one tangency.
pub const TANGENCY_TOL: f64 = 1e-6;
/// Root half-separation below which a crossing is reported as near-tangent.
pub const NEAR_TANGENCY_TOL: f64 = 1e-5;
/// Relative tolerance for classifying a normal as light-like.
const LIGHTLIKE_TOL: f64 = 1e-9;

/// Result of [`Cycle::cycle_points`].
#[derive(Debug, Clone, PartialEq)]
pub struct CyclePoints {
    pub points: Vec<Point>,
    /// The two sections touch: the double root is returned once.
    pub tangent: bool,
    /// Two distinct roots closer than [`NEAR_TANGENCY_TOL`].
    pub near_tangent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cycle {
    geometry: Geometry,
    normal: Vec3,
    offset: f64,
    convex: Side,
}

/// Explicit parameterization data.
#[derive(Debug, Clone, Copy)]
enum Frame {
    /// `x(t) = a c + b (cos t e1 + sin t e2)` (S², H² circles).
    Round {
        c: Vec3,
        e1: Vec3,
        e2: Vec3,
        a: f64,
        b: f64,
    },
    /// `x(t) = h n + k (cosh t f + sinh t e)` (H² hypercycles and geodesics).
    Band { n: Vec3, f: Vec3, e: Vec3, h: f64, k: f64 },
    /// `x(t) = α(t) n + β m + t e`, `α = (1 + t²) / 4β` (H² paracycles).
    Horo { n: Vec3, m: Vec3, e: Vec3, beta: f64 },
    /// `x(t) = p + t e` (R² lines).
    Straight { p: Vec3, e: Vec3 },
    /// `x(t) = c + r (cos t, sin t)` (R² circles).
    Disk { c: Vec3, r: f64 },
}

fn unit_b(g: Geometry, v: Vec3) -> Vec3 {
    let q = g.form(&v, &v).abs().sqrt();
    v / q
}

/// Unit vector B-orthogonal to the timelike/unit `c`, close to `a`.
fn tangent_axis(g: Geometry, c: &Vec3, a: Vec3) -> Vec3 {
    let cc = g.form(c, c);
    let v = a - c * (g.form(&a, c) / cc);
    unit_b(g, v)
}

impl Cycle {
    /// General constructor from a plane section and a convex side; returns the canonical form.
    pub fn from_section(geometry: Geometry, normal: Vec3, offset: f64, convex: Side) -> Result<Cycle> {
        let (mut n, mut h, mut side) = (normal, offset, convex);
        let bad = |msg: &str| Err(Error::Domain(msg.to_string()));
        if !n.iter().all(|c| c.is_finite()) || !h.is_finite() {
            return bad("non-finite section");
        }
        match geometry {
            Geometry::Spherical => {
                let s = n.norm();
                if s == 0.0 {
                    return bad("zero normal");
                }
                n /= s;
                h /= s;
                if side == Side::Below {
                    n = -n;
                    h = -h;
                    side = Side::Above;
                }
                if h >= 1.0 {
                    return bad("section is empty or a single point");
                }
                if h < 0.0 {
                    return bad("the declared side is larger than a hemisphere and not convex");
                }
            }
            Geometry::Hyperbolic => {
                let q = geometry.form(&n, &n);
                let scale = n.norm_squared();
                if scale == 0.0 {
                    return bad("zero normal");
                }
                if q.abs() <= LIGHTLIKE_TOL * scale {
                    let s = n.z;
                    n /= s;
                    h /= s;
                    if s < 0.0 {
                        side = side.flip();
                    }
                    let r = n.x.hypot(n.y);
                    n = Vec3::new(n.x / r, n.y / r, 1.0);
                    if h >= 0.0 {
                        return bad("paracycle offset must be negative");
                    }
                    if side != Side::Above {
                        return bad("only the paraball side of a paracycle is convex");
                    }
                } else if q < 0.0 {
                    let s = (-q).sqrt() * n.z.signum();
                    n /= s;
                    h /= s;
                    if s < 0.0 {
                        side = side.flip();
                    }
                    if h >= -1.0 {
                        return bad("circle section is empty or a single point");
                    }
                    if side != Side::Above {
                        return bad("only the disk side of a circle is convex");
                    }
                } else {
                    let s = q.sqrt();
                    n /= s;
                    h /= s;
                    if side == Side::Above {
                        n = -n;
                        h = -h;
                        side = Side::Below;
                    }
                    if h < 0.0 {
                        return bad(
                            "the declared side of a hypercycle does not contain its base line and is not convex",
                        );
                    }
                }
            }
            Geometry::Euclidean => {
                if n.z != 0.0 {
                    return bad("R² circles are built with Cycle::circle");
                }
                let s = n.x.hypot(n.y);
                if s == 0.0 {
                    return bad("zero normal");
                }
                n /= s;
                h /= s;
                if side == Side::Above {
                    n = -n;
                    h = -h;
                    side = Side::Below;
                }
            }
        }
        Ok(Cycle {
            geometry,
            normal: n,
            offset: h,
            convex: side,
        })
    }

    /// The circle of radius `r` about `center`; its convex side contains the centre.
    pub fn circle(center: &Point, r: f64) -> Result<Cycle> {
        let g = center.geometry();
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("radius must be positive, got {r}")));
        }
        let c = *center.coords();
        Ok(match g {
            Geometry::Spherical => {
                if r > FRAC_PI_2 + 1e-15 {
                    return Err(Error::Domain(format!("S² circle radius {r} exceeds π/2")));
                }
                let h = if (r - FRAC_PI_2).abs() <= 1e-15 { 0.0 } else { r.cos() };
                Cycle {
                    geometry: g,
                    normal: c,
                    offset: h,
                    convex: Side::Above,
                }
            }
            Geometry::Hyperbolic => Cycle {
                geometry: g,
                normal: c,
                offset: -r.cosh(),
                convex: Side::Above,
            },
            Geometry::Euclidean => Cycle {
                geometry: g,
                normal: c,
                offset: r,
                convex: Side::Below,
            },
        })
    }

    /// The geodesic whose nearest point to the origin is `polar(normal_angle, distance)`,
    /// oriented so that the origin lies on its convex side when `distance > 0`.
    pub fn geodesic(geometry: Geometry, normal_angle: f64, distance: f64) -> Cycle {
        let (s, c) = normal_angle.sin_cos();
        let (normal, offset) = match geometry {
            Geometry::Spherical => (Vec3::new(-distance.cos() * c, -distance.cos() * s, distance.sin()), 0.0),
            Geometry::Hyperbolic => (
                Vec3::new(distance.cosh() * c, distance.cosh() * s, distance.sinh()),
                0.0,
            ),
            Geometry::Euclidean => (Vec3::new(c, s, 0.0), distance),
        };
        let convex = if geometry == Geometry::Spherical {
            Side::Above
        } else {
            Side::Below
        };
        Cycle {
            geometry,
            normal,
            offset,
            convex,
        }
    }

    /// The geodesic through two points, with the convex side to the right of `p → q`.
    pub fn geodesic_through(p: &Point, q: &Point) -> Result<Cycle> {
        let g = p.geometry();
        g.expect(q.geometry())?;
        let (a, b) = (p.coords(), q.coords());
        match g {
            Geometry::Euclidean => {
                let d = Vec3::new(b.x - a.x, b.y - a.y, 0.0);
                let len = d.x.hypot(d.y);
                if len < 1e-300 {
                    return Err(Error::Domain("coincident points".into()));
                }
                let u = Vec3::new(-d.y / len, d.x / len, 0.0);
                Ok(Cycle {
                    geometry: g,
                    normal: u,
                    offset: u.x * a.x + u.y * a.y,
                    convex: Side::Below,
                })
            }
            _ => {
                let n = g.cross(a, b);
                let q = g.form(&n, &n);
                if q <= 0.0 || n.norm() < 1e-14 {
                    return Err(if g == Geometry::Spherical && a.dot(b) < 0.0 {
                        Error::Antipodal
                    } else {
                        Error::Domain("coincident points".into())
                    });
                }
                Self::from_section(g, n, 0.0, Side::Below)
            }
        }
    }

    /// The geodesic of H² joining two ideal points.
    pub fn geodesic_ideal(a: &IdealPoint, b: &IdealPoint) -> Result<Cycle> {
        let g = a.geometry();
        if g != Geometry::Hyperbolic {
            return Err(Error::UnsupportedGeometry {
                op: "geodesic between ideal points",
                geometry: g,
            });
        }
        g.expect(b.geometry())?;
        if a.boundary_distance(b) < 1e-12 {
            return Err(Error::Domain("coincident ideal points".into()));
        }
        Self::from_section(g, g.cross(a.direction(), b.direction()), 0.0, Side::Below)
    }

    /// The geodesic through `p` with unit tangent `dir` at `p` (ambient coordinates).
    pub(crate) fn geodesic_tangent(p: &Point, dir: &Vec3) -> Result<Cycle> {
        let g = p.geometry();
        match g {
            Geometry::Euclidean => {
                let u = Vec3::new(-dir.y, dir.x, 0.0);
                Self::from_section(g, u, u.x * p.coords().x + u.y * p.coords().y, Side::Below)
            }
            _ => Self::from_section(g, g.cross(p.coords(), dir), 0.0, Side::Below),
        }
    }

    /// The geodesic `{B(x, m) = 0}` (σ = ±1, `offset` ignored), or the R² line
    /// `{m·x = offset}`. The convex side is `B(x, m) ≤ offset`.
    pub fn geodesic_normal(g: Geometry, m: &Vec3, offset: f64) -> Result<Cycle> {
        match g {
            Geometry::Euclidean => Self::from_section(g, Vec3::new(m.x, m.y, 0.0), offset, Side::Below),
            _ => Self::from_section(g, *m, 0.0, Side::Below),
        }
    }

    /// The hypercycle at signed distance `l` from the geodesic `base` (positive on the
    /// side the base normal points to). `l = 0` returns `base`.
    pub fn hypercycle(base: &Cycle, l: f64) -> Result<Cycle> {
        if base.geometry != Geometry::Hyperbolic {
            return Err(Error::UnsupportedGeometry {
                op: "hypercycle",
                geometry: base.geometry,
            });
        }
        if base.kind() != CycleKind::Geodesic {
            return Err(Error::Kind(format!(
                "hypercycle base must be a geodesic, got {:?}",
                base.kind()
            )));
        }
        if l == 0.0 {
            return Ok(*base);
        }
        let side = if l > 0.0 { Side::Below } else { Side::Above };
        Self::from_section(Geometry::Hyperbolic, base.normal, l.sinh(), side)
    }

    /// The paracycle centred at `at` through `through`.
    pub fn paracycle(at: &IdealPoint, through: &Point) -> Result<Cycle> {
        let g = at.geometry();
        if g != Geometry::Hyperbolic {
            return Err(Error::UnsupportedGeometry {
                op: "paracycle",
                geometry: g,
            });
        }
        g.expect(through.geometry())?;
        let n = *at.direction();
        let h = g.form(through.coords(), &n);
        Self::from_section(g, n, h, Side::Above)
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn normal(&self) -> &Vec3 {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn convex_side(&self) -> Side {
        self.convex
    }

    pub fn kind(&self) -> CycleKind {
        let n = &self.normal;
        let h = self.offset;
        match self.geometry {
            Geometry::Spherical => CycleKind::Circle { radius: h.acos() },
            Geometry::Euclidean => {
                if n.z == 0.0 {
                    CycleKind::Line
                } else {
                    CycleKind::Circle { radius: h }
                }
            }
            Geometry::Hyperbolic => {
                let q = self.geometry.form(n, n);
                if q.abs() <= LIGHTLIKE_TOL * n.norm_squared() {
                    CycleKind::Paracycle
                } else if q < 0.0 {
                    CycleKind::Circle { radius: (-h).acosh() }
                } else if h == 0.0 {
                    CycleKind::Geodesic
                } else {
                    CycleKind::Hypercycle { distance: h.asinh() }
                }
            }
        }
    }

    /// Geodesic curvature.
    pub fn curvature(&self) -> f64 {
        match (self.geometry, self.kind()) {
            (Geometry::Spherical, CycleKind::Circle { .. }) => {
                // cot r = cos r / sin r with cos r = h
                let h = self.offset;
                h / (1.0 - h * h).sqrt()
            }
            (Geometry::Hyperbolic, CycleKind::Circle { .. }) => {
                // coth r = cosh r / sinh r
                let c = -self.offset;
                c / (c * c - 1.0).sqrt()
            }
            (Geometry::Euclidean, CycleKind::Circle { radius }) => 1.0 / radius,
            (_, CycleKind::Paracycle) => 1.0,
            (_, CycleKind::Hypercycle { .. }) => {
                let s = self.offset;
                s / (1.0 + s * s).sqrt()
            }
            _ => 0.0,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.kind(), CycleKind::Circle { .. })
    }

    /// A geodesic (great circle, straight line).
    pub fn is_straight(&self) -> bool {
        match self.kind() {
            CycleKind::Geodesic | CycleKind::Line => true,
            CycleKind::Circle { .. } => self.geometry == Geometry::Spherical && self.offset == 0.0,
            _ => false,
        }
    }

    /// Section value: `B(p, n) − h` (σ = ±1), `u·p − h` (R² line), `|p − c| − r` (R² circle).
    pub fn side(&self, p: &Point) -> Result<f64> {
        self.geometry.expect(p.geometry())?;
        Ok(self.side_raw(p.coords()))
    }

    pub(crate) fn side_raw(&self, x: &Vec3) -> f64 {
        match self.geometry {
            Geometry::Euclidean => {
                if self.normal.z == 0.0 {
                    self.normal.x * x.x + self.normal.y * x.y - self.offset
                } else {
                    (x.x - self.normal.x).hypot(x.y - self.normal.y) - self.offset
                }
            }
            g => g.form(x, &self.normal) - self.offset,
        }
    }

    /// Positive on the convex side, negative off it.
    pub fn inside_value(&self, p: &Point) -> f64 {
        let s = self.side_raw(p.coords());
        match self.convex {
            Side::Below => -s,
            Side::Above => s,
        }
    }

    /// The same section with the other side declared convex (straight lines only).
    pub fn reversed(&self) -> Result<Cycle> {
        if !self.is_straight() {
            return Err(Error::Kind("only straight lines have two convex sides".into()));
        }
        Ok(Cycle {
            normal: -self.normal,
            offset: -self.offset,
            ..*self
        })
    }

    /// Image under an isometry, in canonical form.
    pub fn transform(&self, iso: &Isometry) -> Result<Cycle> {
        self.geometry.expect(iso.geometry())?;
        Ok(self.transform_raw(iso))
    }

    pub(crate) fn transform_raw(&self, iso: &Isometry) -> Cycle {
        let m = iso.matrix();
        let g = self.geometry;
        let (normal, offset) = match (g, self.kind()) {
            (Geometry::Euclidean, CycleKind::Line) => {
                let u = m * self.normal;
                let u = Vec3::new(u.x, u.y, 0.0);
                let u = u / u.x.hypot(u.y);
                (u, self.offset + u.x * m[(0, 2)] + u.y * m[(1, 2)])
            }
            (Geometry::Euclidean, _) => {
                let c = m * self.normal;
                (Vec3::new(c.x / c.z, c.y / c.z, 1.0), self.offset)
            }
            (Geometry::Spherical, _) => {
                let n = m * self.normal;
                (n / n.norm(), self.offset)
            }
            (Geometry::Hyperbolic, CycleKind::Paracycle) => {
                let n = m * self.normal;
                let s = n.z;
                let r = n.x.hypot(n.y);
                (Vec3::new(n.x / r, n.y / r, 1.0), self.offset / s)
            }
            (Geometry::Hyperbolic, CycleKind::Circle { .. }) => {
                let n = m * self.normal;
                (renormalize(g, &n).unwrap_or(n), self.offset)
            }
            (Geometry::Hyperbolic, _) => {
                let n = m * self.normal;
                (unit_b(g, n), self.offset)
            }
        };
        Cycle {
            geometry: g,
            normal,
            offset,
            convex: self.convex,
        }
    }

    /// Whether both cycles are the same curve (ignoring the convex side).
    pub fn same_section(&self, other: &Cycle, tol: f64) -> bool {
        if self.geometry != other.geometry {
            return false;
        }
        let (a, b) = (self.section_vector(), other.section_vector());
        (a - b).norm() < tol || (a + b).norm() < tol
    }

    /// `(n, h)` scaled to unit Euclidean length (R² circles: centre and radius).
    fn section_vector(&self) -> nalgebra::Vector4<f64> {
        let n = self.normal;
        let v = match self.geometry {
            Geometry::Euclidean if n.z != 0.0 => return nalgebra::Vector4::new(n.x, n.y, 1e3, self.offset),
            Geometry::Euclidean => nalgebra::Vector4::new(n.x, n.y, 0.0, -self.offset),
            g => {
                let gn = g.gram() * n;
                nalgebra::Vector4::new(gn.x, gn.y, gn.z, -self.offset)
            }
        };
        v / v.norm()
    }

    /// Isometry-invariant normalization used to compare cycles: the canonical
    /// `(n, h)` with paracycles rescaled to `h = −1`, R² circles tagged by a third
    /// coordinate of 1.
    pub(crate) fn signature(&self) -> [f64; 4] {
        let n = self.normal;
        match (self.geometry, self.kind()) {
            (Geometry::Hyperbolic, CycleKind::Paracycle) => {
                let s = -self.offset;
                [n.x / s, n.y / s, n.z / s, -1.0]
            }
            _ => [n.x, n.y, n.z, self.offset],
        }
    }

    /// Normal used by the symmetry candidates: for paracycles rescaled to `h = −1`.
    pub(crate) fn symmetry_normal(&self) -> Vec3 {
        let [a, b, c, _] = self.signature();
        Vec3::new(a, b, c)
    }

    /// Base line of a hypercycle or geodesic (H²).
    pub fn base_line(&self) -> Result<Cycle> {
        if self.geometry != Geometry::Hyperbolic {
            return Err(Error::UnsupportedGeometry {
                op: "base line",
                geometry: self.geometry,
            });
        }
        match self.kind() {
            CycleKind::Geodesic => Ok(*self),
            CycleKind::Hypercycle { .. } => Ok(Cycle { offset: 0.0, ..*self }),
            k => Err(Error::Kind(format!("{k:?} has no base line"))),
        }
    }

    /// Points at infinity: two for hypercycles, geodesics and R² lines, one for paracycles.
    pub fn ideal_points(&self) -> Vec<IdealPoint> {
        match self.frame() {
            Frame::Band { f, e, .. } => vec![
                IdealPoint::new(self.geometry, f - e).expect("light-like"),
                IdealPoint::new(self.geometry, f + e).expect("light-like"),
            ],
            Frame::Horo { n, .. } => vec![IdealPoint::new(self.geometry, n).expect("light-like")],
            Frame::Straight { e, .. } => vec![
                IdealPoint::new(self.geometry, -e).expect("direction"),
                IdealPoint::new(self.geometry, e).expect("direction"),
            ],
            _ => Vec::new(),
        }
    }

    /// The ideal end reached as `t → −∞` (`forward = false`) or `t → +∞`.
    pub(crate) fn ideal_end(&self, forward: bool) -> Option<IdealPoint> {
        let pts = self.ideal_points();
        match pts.len() {
            0 => None,
            1 => Some(pts[0]),
            _ => Some(if forward { pts[1] } else { pts[0] }),
        }
    }

    /// Foot point (nearest to the origin) and unit direction of a straight line (σ = ±1).
    pub(crate) fn geodesic_frame(&self) -> (Vec3, Vec3) {
        let g = self.geometry;
        let n = self.normal;
        let foot = match g {
            Geometry::Hyperbolic => {
                let v = Vec3::new(0.0, 0.0, 1.0) + n * n.z;
                v / (1.0 + n.z * n.z).sqrt()
            }
            _ => {
                let v = Vec3::new(0.0, 0.0, 1.0) - n * n.z;
                if v.norm() < 1e-9 {
                    Vec3::new(1.0, 0.0, 0.0) - n * n.x
                } else {
                    v
                }
                .normalize()
            }
        };
        let e = unit_b(g, g.cross(&n, &foot));
        (foot, e)
    }

    fn frame(&self) -> Frame {
        let g = self.geometry;
        let n = self.normal;
        let h = self.offset;
        match (g, self.kind()) {
            (Geometry::Euclidean, CycleKind::Line) => Frame::Straight {
                p: Vec3::new(h * n.x, h * n.y, 1.0),
                e: Vec3::new(n.y, -n.x, 0.0),
            },
            (Geometry::Euclidean, _) => Frame::Disk { c: n, r: h },
            (Geometry::Spherical, _) => {
                let a = if n.x.abs() > 0.9 {
                    Vec3::new(0.0, 1.0, 0.0)
                } else {
                    Vec3::new(1.0, 0.0, 0.0)
                };
                let e1 = tangent_axis(g, &n, a);
                let e2 = unit_b(g, g.cross(&n, &e1));
                Frame::Round {
                    c: n,
                    e1,
                    e2,
                    a: h,
                    b: (1.0 - h * h).max(0.0).sqrt(),
                }
            }
            (Geometry::Hyperbolic, CycleKind::Circle { .. }) => {
                let a = if n.x.abs() > 0.9 * n.z {
                    Vec3::new(0.0, 1.0, 0.0)
                } else {
                    Vec3::new(1.0, 0.0, 0.0)
                };
                let e1 = tangent_axis(g, &n, a);
                let e2 = unit_b(g, g.cross(&n, &e1));
                Frame::Round {
                    c: n,
                    e1,
                    e2,
                    a: -h,
                    b: (h * h - 1.0).max(0.0).sqrt(),
                }
            }
            (Geometry::Hyperbolic, CycleKind::Paracycle) => Frame::Horo {
                n,
                m: Vec3::new(-n.x, -n.y, 1.0),
                e: Vec3::new(-n.y, n.x, 0.0),
                beta: -h / 2.0,
            },
            (Geometry::Hyperbolic, _) => {
                let (f, e) = self.geodesic_frame();
                Frame::Band {
                    n,
                    f,
                    e,
                    h,
                    k: (1.0 + h * h).sqrt(),
                }
            }
        }
    }

    /// Point with parameter `t` (angle for closed cycles, arc-length-like otherwise).
    pub fn point_at(&self, t: f64) -> Point {
        let x = match self.frame() {
            Frame::Round { c, e1, e2, a, b } => c * a + (e1 * t.cos() + e2 * t.sin()) * b,
            Frame::Band { n, f, e, h, k } => n * h + (f * t.cosh() + e * t.sinh()) * k,
            Frame::Horo { n, m, e, beta } => n * ((1.0 + t * t) / (4.0 * beta)) + m * beta + e * t,
            Frame::Straight { p, e } => p + e * t,
            Frame::Disk { c, r } => c + Vec3::new(t.cos(), t.sin(), 0.0) * r,
        };
        let coords = renormalize(self.geometry, &x).unwrap_or(x);
        Point::from_normalized(self.geometry, coords)
    }

    /// Derivative of [`Cycle::point_at`] with respect to `t`.
    pub(crate) fn tangent_at(&self, t: f64) -> Vec3 {
        match self.frame() {
            Frame::Round { e1, e2, b, .. } => (e2 * t.cos() - e1 * t.sin()) * b,
            Frame::Band { f, e, k, .. } => (f * t.sinh() + e * t.cosh()) * k,
            Frame::Horo { n, e, beta, .. } => n * (t / (2.0 * beta)) + e,
            Frame::Straight { e, .. } => e,
            Frame::Disk { r, .. } => Vec3::new(-t.sin(), t.cos(), 0.0) * r,
        }
    }

    /// Parameter of a point on the cycle (closed cycles: in `(−π, π]`).
    pub fn param_of(&self, p: &Point) -> f64 {
        let g = self.geometry;
        let x = p.coords();
        match self.frame() {
            Frame::Round { e1, e2, .. } => g.form(x, &e2).atan2(g.form(x, &e1)),
            Frame::Band { e, k, .. } => (g.form(x, &e) / k).asinh(),
            Frame::Horo { e, .. } => g.form(x, &e),
            Frame::Straight { e, .. } => e.x * x.x + e.y * x.y,
            Frame::Disk { c, .. } => (x.y - c.y).atan2(x.x - c.x),
        }
    }

    /// Intersection points of two cycles.
    pub fn cycle_points(&self, other: &Cycle) -> Result<CyclePoints> {
        let g = self.geometry;
        g.expect(other.geometry)?;
        if self.same_section(other, 1e-12) {
            return Err(Error::CoincidentCycles);
        }
        match g {
            Geometry::Euclidean => Ok(euclidean_points(self, other)),
            _ => Ok(section_points(self, other)),
        }
    }
}

fn no_points() -> CyclePoints {
    CyclePoints {
        points: Vec::new(),
        tangent: false,
        near_tangent: false,
    }
}

/// Solves `a s² + 2 b s + c = 0`, classifying near-double roots.
/// Returns `(roots, tangent, near_tangent)`; `scale` converts `s` into a length.
fn quadratic(a: f64, b: f64, c: f64, scale: f64) -> (Vec<f64>, bool, bool) {
    let disc = b * b - a * c;
    // half separation of the roots, in units of `scale`
    let half = disc.abs().sqrt() / a.abs() * scale;
    if disc < 0.0 {
        if half < TANGENCY_TOL {
            return (vec![-b / a], true, false);
        }
        return (Vec::new(), false, false);
    }
    if half < TANGENCY_TOL {
        return (vec![-b / a], true, false);
    }
    let sq = disc.sqrt();
    let q = -(b + b.signum() * sq);
    let (s1, s2) = if q == 0.0 { (sq / a, -sq / a) } else { (q / a, c / q) };
    (vec![s1, s2], false, half < NEAR_TANGENCY_TOL)
}

fn section_points(a: &Cycle, b: &Cycle) -> CyclePoints {
    let g = a.geometry;
    let gram = g.gram();
    let (mut p1, mut h1) = (gram * a.normal, a.offset);
    let (mut p2, mut h2) = (gram * b.normal, b.offset);
    let (s1, s2) = (p1.norm(), p2.norm());
    p1 /= s1;
    h1 /= s1;
    p2 /= s2;
    h2 /= s2;
    let d = p1.cross(&p2);
    let dn = d.norm();
    if dn < 1e-14 {
        return no_points();
    }
    let d = d / dn;
    let m = Mat3::from_rows(&[p1.transpose(), p2.transpose(), d.transpose()]);
    let Some(x0) = m.lu().solve(&Vec3::new(h1, h2, 0.0)) else {
        return no_points();
    };
    let k = g.sigma() as f64;
    let qa = g.form(&d, &d);
    let qb = g.form(&x0, &d);
    let qc = g.form(&x0, &x0) - k;
    let (roots, tangent, near) = if qa.abs() < 1e-12 {
        // light-like line direction: one root is at infinity
        if qb.abs() < 1e-300 {
            (Vec::new(), false, false)
        } else {
            (vec![-qc / (2.0 * qb)], false, false)
        }
    } else {
        let (roots, tangent, near) = quadratic(qa, qb, qc, 1.0);
        // a (near-)double root on the lower sheet of the hyperboloid is not a contact
        if g == Geometry::Hyperbolic && (x0 + d * (-qb / qa)).z <= 0.0 {
            (roots, false, false)
        } else {
            (roots, tangent, near)
        }
    };
    let points = roots
        .into_iter()
        .map(|s| x0 + d * s)
        .filter(|x| g != Geometry::Hyperbolic || x.z > 0.0)
        .filter_map(|x| renormalize(g, &x))
        .map(|x| Point::from_normalized(g, x))
        .collect();
    CyclePoints {
        points,
        tangent,
        near_tangent: near,
    }
}

fn euclidean_points(a: &Cycle, b: &Cycle) -> CyclePoints {
    let g = Geometry::Euclidean;
    let pt = |x: f64, y: f64| Point::from_normalized(g, Vec3::new(x, y, 1.0));
    match (a.kind(), b.kind()) {
        (CycleKind::Line, CycleKind::Line) => {
            let (u, v) = (a.normal, b.normal);
            let det = u.x * v.y - u.y * v.x;
            if det.abs() < 1e-14 {
                return no_points();
            }
            let x = (a.offset * v.y - b.offset * u.y) / det;
            let y = (u.x * b.offset - v.x * a.offset) / det;
            CyclePoints {
                points: vec![pt(x, y)],
                tangent: false,
                near_tangent: false,
            }
        }
        (CycleKind::Line, _) => euclidean_points(b, a),
        (_, CycleKind::Line) => {
            let (c, r) = (a.normal, a.offset);
            let u = b.normal;
            let delta = u.x * c.x + u.y * c.y - b.offset;
            let foot = (c.x - delta * u.x, c.y - delta * u.y);
            let e = (u.y, -u.x);
            let (roots, tangent, near) = quadratic(1.0, 0.0, delta * delta - r * r, 1.0 / r.max(1.0));
            let points = roots
                .into_iter()
                .map(|s| pt(foot.0 + s * e.0, foot.1 + s * e.1))
                .collect();
            CyclePoints {
                points,
                tangent,
                near_tangent: near,
            }
        }
        _ => {
            let (c1, r1, c2, r2) = (a.normal, a.offset, b.normal, b.offset);
            let (dx, dy) = (c2.x - c1.x, c2.y - c1.y);
            let d = dx.hypot(dy);
            if d < 1e-15 {
                return no_points();
            }
            // radical line at distance `x` from c1 along c1 -> c2
            let x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
            let (ux, uy) = (dx / d, dy / d);
            let foot = (c1.x + x * ux, c1.y + x * uy);
            let (roots, tangent, near) = quadratic(1.0, 0.0, x * x - r1 * r1, 1.0 / r1.max(1.0));
            let points = roots
                .into_iter()
                .map(|s| pt(foot.0 - s * uy, foot.1 + s * ux))
                .collect();
            CyclePoints {
                points,
                tangent,
                near_tangent: near,
            }
        }
    }
}

/// Signed distance of `p` from the geodesic `{B(x, n) = 0}` of H² (positive on the `n` side).
pub fn signed_distance_to_geodesic(geodesic: &Cycle, p: &Point) -> f64 {
    geodesic.geometry().form(p.coords(), geodesic.normal()).asinh()
}

/// Canonical parameter range used to sample a whole cycle.
pub(crate) fn full_range(c: &Cycle) -> (f64, f64) {
    if c.is_closed() {
        (-PI, PI)
    } else {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::distance;

    const H: Geometry = Geometry::Hyperbolic;
    const S: Geometry = Geometry::Spherical;
    const E: Geometry = Geometry::Euclidean;

    #[test]
    fn great_circle_has_zero_curvature() {
        let c = Cycle::circle(&Point::origin(S), FRAC_PI_2).unwrap();
        assert_eq!(c.curvature(), 0.0);
        assert!(c.is_straight());
        let q = Cycle::circle(&Point::origin(S), PI / 4.0).unwrap();
        assert!((q.curvature() - 1.0).abs() < 1e-12);
        assert!(Cycle::circle(&Point::origin(S), 1.6).is_err());
    }

    #[test]
    fn hyperbolic_circle_section() {
        let c = Cycle::circle(&Point::origin(H), 1.0).unwrap();
        assert!((c.offset() + 1f64.cosh()).abs() < 1e-15);
        for i in 0..16 {
            let p = c.point_at(i as f64 * 0.4);
            assert!((distance(&p, &Point::origin(H)).unwrap() - 1.0).abs() < 1e-10);
        }
        assert!((c.curvature() - 1.0 / 1f64.tanh()).abs() < 1e-12);
        assert!(c.inside_value(&Point::origin(H)) > 0.0);
    }

    #[test]
    fn hypercycle_points_keep_their_distance() {
        let base = Cycle::geodesic(H, PI / 2.0, 0.0);
        assert_eq!(Cycle::hypercycle(&base, 0.0).unwrap(), base);
        for l in [1.0, -1.0, 0.3] {
            let hc = Cycle::hypercycle(&base, l).unwrap();
            assert!((hc.curvature() - l.abs().tanh()).abs() < 1e-12);
            for t in [-2.0, -0.5, 0.0, 0.7, 3.0] {
                let p = hc.point_at(t);
                let d = signed_distance_to_geodesic(&base, &p);
                assert!((d - l).abs() < 1e-10, "l={l} t={t} d={d}");
            }
            assert!(hc.inside_value(&base.point_at(0.3)) > 0.0);
            let ends = hc.ideal_points();
            let bends = base.ideal_points();
            let matched = ends
                .iter()
                .all(|a| bends.iter().any(|b| a.boundary_distance(b) < 1e-10));
            assert!(matched);
        }
        assert!(Cycle::hypercycle(&Cycle::geodesic(E, 0.0, 0.0), 1.0).is_err());
    }

    #[test]
    fn paracycle_construction() {
        let a = IdealPoint::at_angle(H, 0.8);
        let p = Point::polar(H, 2.0, 0.6);
        let c = Cycle::paracycle(&a, &p).unwrap();
        assert_eq!(c.curvature(), 1.0);
        assert!(c.side(&p).unwrap().abs() < 1e-10);
        assert_eq!(c.kind(), CycleKind::Paracycle);
        assert_eq!(c.ideal_points().len(), 1);
        let q = c.point_at(c.param_of(&p));
        assert!(distance(&p, &q).unwrap() < 1e-9);
        // concentric paracycles never cross
        let c2 = Cycle::paracycle(&a, &Point::polar(H, 1.0, 0.2)).unwrap();
        assert!(c.cycle_points(&c2).unwrap().points.len() <= 1);
    }

    #[test]
    fn curvature_table() {
        let o = Point::origin(H);
        assert!((Cycle::circle(&o, 1.0).unwrap().curvature() - 1.3130352854993312).abs() < 1e-10);
        assert_eq!(Cycle::geodesic(H, 0.2, 0.4).curvature(), 0.0);
        assert_eq!(
            Cycle::circle(&Point::euclidean(1.0, 2.0), 2.0).unwrap().curvature(),
            0.5
        );
    }

    #[test]
    fn side_sign_flips_across_cycle() {
        let c = Cycle::circle(&Point::polar(H, 0.3, 0.5), 0.8).unwrap();
        // march along a geodesic ray from the centre and find the sign change by bisection
        let center = Point::polar(H, 0.3, 0.5);
        let ray = |s: f64| center.exp(s * 0.6, s * 0.8);
        let (mut lo, mut hi) = (0.0, 3.0);
        assert!(c.inside_value(&ray(lo)) > 0.0 && c.inside_value(&ray(hi)) < 0.0);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if c.inside_value(&ray(mid)) > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        assert!((lo - 0.8).abs() < 1e-10);
    }

    #[test]
    fn concentric_and_tangent_circles() {
        for g in [S, E, H] {
            let o = Point::origin(g);
            let a = Cycle::circle(&o, 0.5).unwrap();
            let b = Cycle::circle(&o, 0.7).unwrap();
            assert!(a.cycle_points(&b).unwrap().points.is_empty());
            // congruent circle translated by 2r touches externally
            let moved = Point::polar(g, 0.4, 1.0);
            let c = Cycle::circle(&moved, 0.5).unwrap();
            let res = a.cycle_points(&c).unwrap();
            assert!(res.tangent, "{g:?}");
            assert_eq!(res.points.len(), 1);
            let p = res.points[0];
            assert!(a.side(&p).unwrap().abs() < 1e-9 && c.side(&p).unwrap().abs() < 1e-9);
            assert!(matches!(a.cycle_points(&a), Err(Error::CoincidentCycles)));
        }
    }

    #[test]
    fn circle_geodesic_half_angle() {
        // tanh c = tanh r cos ω for a circle centred at distance c from a geodesic
        let (r, c) = (1.0f64, 0.4f64);
        let base = Cycle::geodesic(H, PI / 2.0, 0.0);
        let center = Point::polar(H, PI / 2.0, c);
        let circ = Cycle::circle(&center, r).unwrap();
        let pts = circ.cycle_points(&base).unwrap().points;
        assert_eq!(pts.len(), 2);
        let foot = Point::origin(H);
        let dir_a = center.direction_to(&foot);
        for p in pts {
            let dir_c = center.direction_to(&p);
            let omega = H.form(&dir_a, &dir_c).clamp(-1.0, 1.0).acos();
            assert!((c.tanh() - r.tanh() * omega.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn base_line_and_ideal_points() {
        let g = Cycle::geodesic(H, 1.0, 0.5);
        assert_eq!(g.base_line().unwrap(), g);
        let hc = Cycle::hypercycle(&g, 0.7).unwrap();
        assert_eq!(hc.base_line().unwrap().kind(), CycleKind::Geodesic);
        assert!(Cycle::circle(&Point::origin(H), 1.0).unwrap().ideal_points().is_empty());
        assert!(Cycle::circle(&Point::origin(H), 1.0).unwrap().base_line().is_err());
        // ideal points are limits of section points
        let far = hc.point_at(30.0);
        let [kx, ky] = far.klein();
        let end = hc.ideal_end(true).unwrap().boundary();
        assert!((kx - end[0]).abs() < 1e-10 && (ky - end[1]).abs() < 1e-10);
    }

    #[test]
    fn parameterization_round_trips() {
        let cycles = [
            Cycle::circle(&Point::polar(S, 0.4, 0.9), 0.6).unwrap(),
            Cycle::circle(&Point::polar(H, 0.4, 0.9), 0.6).unwrap(),
            Cycle::circle(&Point::euclidean(0.3, -1.0), 2.0).unwrap(),
            Cycle::hypercycle(&Cycle::geodesic(H, 2.0, 0.8), -0.4).unwrap(),
            Cycle::paracycle(&IdealPoint::at_angle(H, -1.0), &Point::polar(H, 0.1, 0.3)).unwrap(),
            Cycle::geodesic(E, 0.5, 1.5),
            Cycle::geodesic(S, 0.5, 0.2),
        ];
        for c in cycles {
            for t in [-1.2, -0.1, 0.0, 0.6, 2.5] {
                let p = c.point_at(t);
                assert!(c.side(&p).unwrap().abs() < 1e-10, "{c:?}");
                assert!((c.param_of(&p) - t).abs() < 1e-9, "{c:?} {t}");
                // tangent by finite differences
                let eps = 1e-6;
                let fd = (c.point_at(t + eps).coords() - c.point_at(t - eps).coords()) / (2.0 * eps);
                assert!((fd - c.tangent_at(t)).norm() < 1e-6 * fd.norm().max(1.0), "{c:?}");
            }
        }
    }
}
