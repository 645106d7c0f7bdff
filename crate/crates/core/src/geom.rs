//! Points, the metric and the isometry group of S², R² and H².

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::cycles::{Cycle, CycleKind};
use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

/// Tolerance used when projecting drifted coordinates back onto the model surface.
pub const NORMALIZE_TOL: f64 = 1e-12;
/// Tolerance on the isometry invariants (form preservation, orthogonality).
pub const ISOMETRY_TOL: f64 = 1e-10;

/// Signed curvature tag of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    /// S², σ = +1.
    Spherical,
    /// R², σ = 0.
    Euclidean,
    /// H², σ = −1.
    Hyperbolic,
}

impl Geometry {
    pub fn sigma(self) -> i32 {
        match self {
            Geometry::Spherical => 1,
            Geometry::Euclidean => 0,
            Geometry::Hyperbolic => -1,
        }
    }

    pub fn from_sigma(sigma: i32) -> Option<Self> {
        match sigma {
            1 => Some(Geometry::Spherical),
            0 => Some(Geometry::Euclidean),
            -1 => Some(Geometry::Hyperbolic),
            _ => None,
        }
    }

    /// The bilinear form `B_σ(u, v) = u1 v1 + u2 v2 + σ u3 v3`.
    #[inline]
    pub fn form(self, u: &Vec3, v: &Vec3) -> f64 {
        u.x * v.x + u.y * v.y + self.sigma() as f64 * u.z * v.z
    }

    /// Gram matrix `diag(1, 1, σ)`.
    pub fn gram(self) -> Mat3 {
        Mat3::from_diagonal(&Vec3::new(1.0, 1.0, self.sigma() as f64))
    }

    pub(crate) fn expect(self, other: Geometry) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GeometryMismatch(self, other))
        }
    }

    /// `G (u × v)`: B-orthogonal to both `u` and `v` for σ = ±1.
    pub(crate) fn cross(self, u: &Vec3, v: &Vec3) -> Vec3 {
        let c = u.cross(v);
        Vec3::new(c.x, c.y, self.sigma() as f64 * c.z)
    }
}

/// Projects ambient coordinates onto the model surface.
pub(crate) fn renormalize(geometry: Geometry, v: &Vec3) -> Option<Vec3> {
    if !v.iter().all(|c| c.is_finite()) {
        return None;
    }
    match geometry {
        Geometry::Spherical => {
            let n = v.norm();
            (n > 0.0).then(|| v / n)
        }
        Geometry::Hyperbolic => {
            let q = -geometry.form(v, v);
            if q <= 0.0 {
                return None;
            }
            let w = v / q.sqrt();
            Some(if w.z < 0.0 { -w } else { w })
        }
        Geometry::Euclidean => (v.z.abs() > f64::MIN_POSITIVE).then(|| Vec3::new(v.x / v.z, v.y / v.z, 1.0)),
    }
}

/// A point of the model surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    coords: Vec3,
    geometry: Geometry,
}

impl Point {
    /// Builds a point from ambient coordinates, normalizing them onto the surface.
    pub fn new(geometry: Geometry, coords: Vec3) -> Result<Point> {
        renormalize(geometry, &coords)
            .map(|coords| Point { coords, geometry })
            .ok_or_else(|| Error::InvalidPoint(format!("{coords:?} has no image on the {geometry:?} model surface")))
    }

    pub(crate) fn from_normalized(geometry: Geometry, coords: Vec3) -> Point {
        Point { coords, geometry }
    }

    /// The model origin `(0, 0, 1)`.
    pub fn origin(geometry: Geometry) -> Point {
        Point {
            coords: Vec3::new(0.0, 0.0, 1.0),
            geometry,
        }
    }

    /// The point at distance `dist` from the origin in direction `angle`.
    pub fn polar(geometry: Geometry, angle: f64, dist: f64) -> Point {
        let (s, c) = angle.sin_cos();
        let coords = match geometry {
            Geometry::Spherical => Vec3::new(dist.sin() * c, dist.sin() * s, dist.cos()),
            Geometry::Hyperbolic => Vec3::new(dist.sinh() * c, dist.sinh() * s, dist.cosh()),
            Geometry::Euclidean => Vec3::new(dist * c, dist * s, 1.0),
        };
        Point { coords, geometry }
    }

    pub fn euclidean(x: f64, y: f64) -> Point {
        Point {
            coords: Vec3::new(x, y, 1.0),
            geometry: Geometry::Euclidean,
        }
    }

    /// H² point from Klein (collinear model) coordinates.
    pub fn from_klein(x: f64, y: f64) -> Result<Point> {
        let r2 = x * x + y * y;
        if r2 >= 1.0 {
            return Err(Error::InvalidPoint(format!("({x}, {y}) is outside the Klein disk")));
        }
        let w = 1.0 / (1.0 - r2).sqrt();
        Ok(Point {
            coords: Vec3::new(x * w, y * w, w),
            geometry: Geometry::Hyperbolic,
        })
    }

    /// H² point from Poincaré (conformal model) coordinates.
    pub fn from_poincare(x: f64, y: f64) -> Result<Point> {
        let r2 = x * x + y * y;
        if r2 >= 1.0 {
            return Err(Error::InvalidPoint(format!("({x}, {y}) is outside the Poincaré disk")));
        }
        let d = 1.0 - r2;
        Ok(Point {
            coords: Vec3::new(2.0 * x / d, 2.0 * y / d, (1.0 + r2) / d),
            geometry: Geometry::Hyperbolic,
        })
    }

    pub fn coords(&self) -> &Vec3 {
        &self.coords
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// Central projection `(x1/x3, x2/x3)`: Klein model for H², gnomonic chart for S².
    pub fn klein(&self) -> [f64; 2] {
        [self.coords.x / self.coords.z, self.coords.y / self.coords.z]
    }

    /// `(x1/(1+x3), x2/(1+x3))`: Poincaré model for H², stereographic chart for S²
    /// (projection from the antipode of the origin), identity chart for R².
    pub fn conformal(&self) -> [f64; 2] {
        match self.geometry {
            Geometry::Euclidean => [self.coords.x, self.coords.y],
            _ => {
                let d = 1.0 + self.coords.z;
                [self.coords.x / d, self.coords.y / d]
            }
        }
    }

    /// Geodesic midpoint. Fails for antipodal points of S².
    pub fn midpoint(&self, other: &Point) -> Result<Point> {
        self.geometry.expect(other.geometry)?;
        match self.geometry {
            Geometry::Euclidean => Ok(Point::euclidean(
                0.5 * (self.coords.x + other.coords.x),
                0.5 * (self.coords.y + other.coords.y),
            )),
            g => {
                let s = self.coords + other.coords;
                if g == Geometry::Spherical && s.norm() < 1e-12 {
                    return Err(Error::Antipodal);
                }
                Point::new(g, s)
            }
        }
    }

    /// Exponential map at `self` applied to `(u, v)` in the point's standard tangent frame.
    pub fn exp(&self, u: f64, v: f64) -> Point {
        let rho = u.hypot(v);
        let frame = Isometry::transvection(self);
        let local = Point::polar(self.geometry, v.atan2(u), rho);
        frame.apply_raw(&local)
    }

    /// Unit tangent vector at `self` pointing towards `other` (ambient coordinates).
    pub fn direction_to(&self, other: &Point) -> Vec3 {
        let g = self.geometry;
        let p = self.coords;
        let q = other.coords;
        let v = match g {
            Geometry::Euclidean => Vec3::new(q.x - p.x, q.y - p.y, 0.0),
            Geometry::Spherical => q - p * p.dot(&q),
            Geometry::Hyperbolic => q + p * g.form(&p, &q),
        };
        let n = g.form(&v, &v).max(0.0).sqrt();
        if n > 0.0 {
            v / n
        } else {
            v
        }
    }
}

/// A point at infinity: an ideal point of H², or a direction at infinity of R².
///
/// H² ideal points are normalized to `x3 = 1`, so `(x1, x2)` lies on the unit
/// circle bounding the Klein and Poincaré disks. R² directions are stored as
/// `(cos θ, sin θ, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealPoint {
    direction: Vec3,
    geometry: Geometry,
}

impl IdealPoint {
    pub fn new(geometry: Geometry, direction: Vec3) -> Result<IdealPoint> {
        match geometry {
            Geometry::Hyperbolic => {
                if direction.z <= 0.0 {
                    return Err(Error::InvalidPoint(format!(
                        "{direction:?} is not a future light-like direction"
                    )));
                }
                let q = geometry.form(&direction, &direction);
                if q.abs() > 1e-9 * direction.norm_squared() {
                    return Err(Error::InvalidPoint(format!("{direction:?} is not light-like")));
                }
                Ok(Self::at_angle(geometry, direction.y.atan2(direction.x)))
            }
            Geometry::Euclidean => {
                let n = direction.x.hypot(direction.y);
                if n == 0.0 {
                    return Err(Error::InvalidPoint("zero direction".into()));
                }
                Ok(IdealPoint {
                    direction: Vec3::new(direction.x / n, direction.y / n, 0.0),
                    geometry,
                })
            }
            Geometry::Spherical => Err(Error::UnsupportedGeometry {
                op: "ideal point",
                geometry,
            }),
        }
    }

    /// The ideal point seen under boundary angle `angle`.
    pub fn at_angle(geometry: Geometry, angle: f64) -> IdealPoint {
        let (s, c) = angle.sin_cos();
        let z = if geometry == Geometry::Hyperbolic { 1.0 } else { 0.0 };
        IdealPoint {
            direction: Vec3::new(c, s, z),
            geometry,
        }
    }

    pub fn direction(&self) -> &Vec3 {
        &self.direction
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// Position on the unit boundary circle.
    pub fn boundary(&self) -> [f64; 2] {
        [self.direction.x, self.direction.y]
    }

    pub fn angle(&self) -> f64 {
        self.direction.y.atan2(self.direction.x)
    }

    /// Euclidean distance of the boundary positions.
    pub fn boundary_distance(&self, other: &IdealPoint) -> f64 {
        (self.direction.x - other.direction.x).hypot(self.direction.y - other.direction.y)
    }
}

/// Geodesic distance.
pub fn distance(p: &Point, q: &Point) -> Result<f64> {
    p.geometry.expect(q.geometry)?;
    let (a, b) = (p.coords, q.coords);
    Ok(match p.geometry {
        Geometry::Euclidean => (a.x - b.x).hypot(a.y - b.y),
        Geometry::Spherical => a.cross(&b).norm().atan2(a.dot(&b)),
        Geometry::Hyperbolic => {
            let d = a - b;
            let chord = Geometry::Hyperbolic.form(&d, &d).max(0.0).sqrt();
            2.0 * (0.5 * chord).asinh()
        }
    })
}

/// Generators accepted by [`Isometry::make`].
#[derive(Debug, Clone, Copy)]
pub enum Generator {
    Rotation { center: Point, angle: f64 },
    Reflection { axis: Cycle },
    Translation { axis: Cycle, length: f64 },
    PointReflection { center: Point },
    Parabolic { fixed: IdealPoint, parameter: f64 },
}

/// A congruence of the plane, acting linearly on ambient coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    matrix: Mat3,
    geometry: Geometry,
    orientation: i8,
}

fn rot_z(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    Mat3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
}

impl Isometry {
    pub fn identity(geometry: Geometry) -> Isometry {
        Isometry {
            matrix: Mat3::identity(),
            geometry,
            orientation: 1,
        }
    }

    /// Wraps a matrix, checking every isometry invariant.
    pub fn from_matrix(geometry: Geometry, matrix: Mat3) -> Result<Isometry> {
        let iso = Self::from_matrix_unchecked(geometry, matrix);
        iso.validate()?;
        Ok(iso)
    }

    pub(crate) fn from_matrix_unchecked(geometry: Geometry, matrix: Mat3) -> Isometry {
        let orientation = if matrix.determinant() < 0.0 { -1 } else { 1 };
        Isometry {
            matrix,
            geometry,
            orientation,
        }
    }

    pub fn make(generator: Generator) -> Result<Isometry> {
        match generator {
            Generator::Rotation { center, angle } => Ok(Self::rotation(&center, angle)),
            Generator::Reflection { axis } => Self::reflection(&axis),
            Generator::Translation { axis, length } => Self::translation(&axis, length),
            Generator::PointReflection { center } => Ok(Self::point_reflection(&center)),
            Generator::Parabolic { fixed, parameter } => Self::parabolic(&fixed, parameter),
        }
    }

    /// The orientation-preserving isometry moving the origin to `p` along the
    /// geodesic joining them (its tangent frame at the origin is carried
    /// to the standard tangent frame at `p`).
    pub fn transvection(p: &Point) -> Isometry {
        let g = p.geometry;
        let x = p.coords;
        let matrix = match g {
            Geometry::Euclidean => Mat3::new(1.0, 0.0, x.x, 0.0, 1.0, x.y, 0.0, 0.0, 1.0),
            Geometry::Spherical | Geometry::Hyperbolic => {
                // sin/sinh and cos/cosh of the distance from the origin.
                let (s, c) = (x.x.hypot(x.y), x.z);
                let alpha = x.y.atan2(x.x);
                // Rotation (S²) or boost (H²) in the x1-x3 plane.
                let m = if g == Geometry::Spherical {
                    Mat3::new(c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c)
                } else {
                    Mat3::new(c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c)
                };
                rot_z(alpha) * m * rot_z(-alpha)
            }
        };
        Isometry {
            matrix,
            geometry: g,
            orientation: 1,
        }
    }

    /// Rotation by `angle` (counter-clockwise in the standard frame) about `center`.
    pub fn rotation(center: &Point, angle: f64) -> Isometry {
        let t = Self::transvection(center);
        let matrix = t.matrix * rot_z(angle) * t.inverse().matrix;
        Isometry {
            matrix,
            geometry: center.geometry,
            orientation: 1,
        }
    }

    /// Central symmetry in `center`; the same map as `rotation(center, π)`.
    pub fn point_reflection(center: &Point) -> Isometry {
        let g = center.geometry;
        let p = center.coords;
        let matrix = match g {
            Geometry::Euclidean => Mat3::new(-1.0, 0.0, 2.0 * p.x, 0.0, -1.0, 2.0 * p.y, 0.0, 0.0, 1.0),
            // x -> -x + 2 B(x, p) p / B(p, p)
            _ => {
                let gp = g.gram() * p;
                -Mat3::identity() + (p * gp.transpose()) * (2.0 / g.form(&p, &p))
            }
        };
        Isometry {
            matrix,
            geometry: g,
            orientation: 1,
        }
    }

    /// Reflection in a geodesic (a great circle of S², a line of R²).
    pub fn reflection(axis: &Cycle) -> Result<Isometry> {
        match axis.kind() {
            CycleKind::Geodesic | CycleKind::Line => {}
            CycleKind::Circle { radius }
                if axis.geometry() == Geometry::Spherical && (radius - PI / 2.0).abs() < 1e-12 => {}
            k => return Err(Error::Kind(format!("reflection axis must be a geodesic, got {k:?}"))),
        }
        Ok(Self::reflection_normal(axis.geometry(), axis.normal(), axis.offset()))
    }

    /// Reflection in the geodesic `{B(x, m) = offset}` (offset only used for R²).
    pub(crate) fn reflection_normal(geometry: Geometry, m: &Vec3, offset: f64) -> Isometry {
        let matrix = match geometry {
            Geometry::Euclidean => {
                let n = m.x.hypot(m.y);
                let (u1, u2, h) = (m.x / n, m.y / n, offset / n);
                Mat3::new(
                    1.0 - 2.0 * u1 * u1,
                    -2.0 * u1 * u2,
                    2.0 * h * u1,
                    -2.0 * u1 * u2,
                    1.0 - 2.0 * u2 * u2,
                    2.0 * h * u2,
                    0.0,
                    0.0,
                    1.0,
                )
            }
            g => {
                let gm = g.gram() * m;
                Mat3::identity() - (m * gm.transpose()) * (2.0 / g.form(m, m))
            }
        };
        Isometry {
            matrix,
            geometry,
            orientation: -1,
        }
    }

    /// Translation by signed `length` along a geodesic; positive lengths move in
    /// the direction `G (n × F)` where `n` is the axis normal and `F` its foot point.
    pub fn translation(axis: &Cycle, length: f64) -> Result<Isometry> {
        let g = axis.geometry();
        match axis.kind() {
            CycleKind::Geodesic | CycleKind::Line => {}
            CycleKind::Circle { radius } if g == Geometry::Spherical && (radius - PI / 2.0).abs() < 1e-12 => {}
            k => return Err(Error::Kind(format!("translation axis must be a geodesic, got {k:?}"))),
        }
        let n = *axis.normal();
        let matrix = match g {
            Geometry::Euclidean => Mat3::new(1.0, 0.0, length * n.y, 0.0, 1.0, -length * n.x, 0.0, 0.0, 1.0),
            _ => {
                let (foot, e) = axis.geodesic_frame();
                let gram = g.gram();
                let (s, c) = if g == Geometry::Spherical {
                    length.sin_cos()
                } else {
                    (length.sinh(), length.cosh())
                };
                // Coordinates of x in the basis (F, e, n): a = B(x,F)/B(F,F), b = B(x,e), c = B(x,n).
                let f_row = (gram * foot).transpose() / g.form(&foot, &foot);
                let e_row = (gram * e).transpose();
                let n_row = (gram * n).transpose();
                let sig = g.sigma() as f64;
                // F -> c F + s e ; e -> -σ s F + c e ; n -> n
                let img_f = foot * c + e * s;
                let img_e = foot * (-sig * s) + e * c;
                img_f * f_row + img_e * e_row + n * n_row
            }
        };
        Ok(Isometry {
            matrix,
            geometry: g,
            orientation: 1,
        })
    }

    /// Parabolic isometry ("rotation about an infinite point") fixing `fixed`.
    pub fn parabolic(fixed: &IdealPoint, parameter: f64) -> Result<Isometry> {
        if fixed.geometry != Geometry::Hyperbolic {
            return Err(Error::UnsupportedGenerator("parabolic isometries exist only in H²"));
        }
        let n = fixed.direction;
        let m = Vec3::new(-n.x, -n.y, 1.0);
        let e = Vec3::new(-n.y, n.x, 0.0);
        let s = parameter;
        let basis = Mat3::from_columns(&[n, e, m]);
        let image = Mat3::from_columns(&[n, e + n * s, m + e * (2.0 * s) + n * (s * s)]);
        let inv = basis
            .try_inverse()
            .ok_or_else(|| Error::Domain("degenerate parabolic frame".into()))?;
        Ok(Isometry {
            matrix: image * inv,
            geometry: Geometry::Hyperbolic,
            orientation: 1,
        })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.matrix
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// +1 for orientation-preserving maps, −1 otherwise.
    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// Checks the isometry invariants.
    pub fn validate(&self) -> Result<()> {
        let m = &self.matrix;
        match self.geometry {
            Geometry::Euclidean => {
                if m[(2, 0)].abs() > ISOMETRY_TOL
                    || m[(2, 1)].abs() > ISOMETRY_TOL
                    || (m[(2, 2)] - 1.0).abs() > ISOMETRY_TOL
                {
                    return Err(Error::Domain("affine isometry must have last row (0, 0, 1)".into()));
                }
                let a = m.fixed_view::<2, 2>(0, 0);
                let err = (a.transpose() * a - nalgebra::Matrix2::identity()).norm();
                if err > ISOMETRY_TOL {
                    return Err(Error::Domain(format!("linear part is not orthogonal (error {err:e})")));
                }
            }
            g => {
                let gram = g.gram();
                let err = (m.transpose() * gram * m - gram).norm();
                if err > ISOMETRY_TOL * m.norm_squared().max(1.0) {
                    return Err(Error::Domain(format!(
                        "matrix does not preserve the form (error {err:e})"
                    )));
                }
                if g == Geometry::Hyperbolic && m[(2, 2)] <= 0.0 {
                    return Err(Error::Domain("matrix swaps the hyperboloid sheets".into()));
                }
            }
        }
        let det = m.determinant();
        if (det.signum() as i8) != self.orientation {
            return Err(Error::Domain("orientation flag disagrees with the determinant".into()));
        }
        Ok(())
    }

    pub fn apply(&self, p: &Point) -> Result<Point> {
        self.geometry.expect(p.geometry)?;
        Ok(self.apply_raw(p))
    }

    pub(crate) fn apply_raw(&self, p: &Point) -> Point {
        let v = self.matrix * p.coords;
        let coords = renormalize(self.geometry, &v).unwrap_or(v);
        Point {
            coords,
            geometry: self.geometry,
        }
    }

    pub fn apply_ideal(&self, p: &IdealPoint) -> Result<IdealPoint> {
        self.geometry.expect(p.geometry)?;
        Ok(self.apply_ideal_raw(p))
    }

    pub(crate) fn apply_ideal_raw(&self, p: &IdealPoint) -> IdealPoint {
        let v = match self.geometry {
            Geometry::Euclidean => {
                let d = self.matrix * Vec3::new(p.direction.x, p.direction.y, 0.0);
                Vec3::new(d.x, d.y, 0.0)
            }
            _ => self.matrix * p.direction,
        };
        let angle = v.y.atan2(v.x);
        IdealPoint::at_angle(self.geometry, angle)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        self.geometry.expect(other.geometry)?;
        Ok(Isometry {
            matrix: self.matrix * other.matrix,
            geometry: self.geometry,
            orientation: self.orientation * other.orientation,
        })
    }

    pub fn inverse(&self) -> Isometry {
        let matrix = match self.geometry {
            Geometry::Euclidean => {
                let a = self.matrix.fixed_view::<2, 2>(0, 0).transpose();
                let b = -(a * nalgebra::Vector2::new(self.matrix[(0, 2)], self.matrix[(1, 2)]));
                Mat3::new(a[(0, 0)], a[(0, 1)], b.x, a[(1, 0)], a[(1, 1)], b.y, 0.0, 0.0, 1.0)
            }
            g => {
                let gram = g.gram();
                gram * self.matrix.transpose() * gram
            }
        };
        Isometry {
            matrix,
            geometry: self.geometry,
            orientation: self.orientation,
        }
    }

    /// Frobenius distance between the matrices.
    pub fn matrix_distance(&self, other: &Isometry) -> f64 {
        (self.matrix - other.matrix).norm()
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.matrix - Mat3::identity()).norm() < tol
    }

    /// True when `self ∘ self` is the identity within `tol`.
    pub fn is_involution(&self, tol: f64) -> bool {
        (self.matrix * self.matrix - Mat3::identity()).norm() < tol * self.matrix.norm_squared().max(1.0)
    }
}
