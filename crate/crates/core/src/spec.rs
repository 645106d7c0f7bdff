//! Serializable descriptions of points, geodesics and isometries.
//!
//! These are the building blocks of the JSON region and render formats. A
//! geometry is never stored here; it is supplied by the enclosing document.

use serde::{Deserialize, Serialize};

use crate::cycles::Cycle;
use crate::error::{Error, Result};
use crate::geom::{Geometry, IdealPoint, Isometry, Point, Vec3};

/// A point, either as ambient coordinates or in polar form about the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Ambient([f64; 3]),
    Polar { angle: f64, distance: f64 },
}

impl Default for PointSpec {
    fn default() -> Self {
        PointSpec::Polar {
            angle: 0.0,
            distance: 0.0,
        }
    }
}

impl PointSpec {
    pub fn resolve(&self, geometry: Geometry) -> Result<Point> {
        match *self {
            PointSpec::Ambient([x, y, z]) => Point::new(geometry, Vec3::new(x, y, z)),
            PointSpec::Polar { angle, distance } => {
                if !angle.is_finite() || !distance.is_finite() || distance < 0.0 {
                    return Err(Error::InvalidSpec(format!("bad polar point ({angle}, {distance})")));
                }
                Ok(Point::polar(geometry, angle, distance))
            }
        }
    }
}

/// A geodesic. The normal form `{normal_angle, distance}` names the line whose
/// nearest point to the origin is at that polar position; its default convex
/// side contains the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeodesicSpec {
    Normal {
        normal_angle: f64,
        distance: f64,
    },
    /// Boundary angles of the two ends (H² only), convex side to the right of `ideal[0] → ideal[1]`.
    Ideal {
        ideal: [f64; 2],
    },
    Through {
        through: [PointSpec; 2],
    },
}

impl GeodesicSpec {
    pub fn resolve(&self, geometry: Geometry) -> Result<Cycle> {
        match *self {
            GeodesicSpec::Normal { normal_angle, distance } => {
                if !normal_angle.is_finite() || !distance.is_finite() {
                    return Err(Error::InvalidSpec("non-finite geodesic parameters".into()));
                }
                if geometry == Geometry::Spherical && distance.abs() >= std::f64::consts::FRAC_PI_2 {
                    return Err(Error::InvalidSpec(format!(
                        "S² geodesic distance {distance} must be below π/2"
                    )));
                }
                Ok(Cycle::geodesic(geometry, normal_angle, distance))
            }
            GeodesicSpec::Ideal { ideal: [a, b] } => {
                Cycle::geodesic_ideal(&IdealPoint::at_angle(geometry, a), &IdealPoint::at_angle(geometry, b))
                    .map_err(|e| Error::InvalidSpec(e.to_string()))
            }
            GeodesicSpec::Through { through: [p, q] } => {
                Cycle::geodesic_through(&p.resolve(geometry)?, &q.resolve(geometry)?)
                    .map_err(|e| Error::InvalidSpec(e.to_string()))
            }
        }
    }
}

/// One generator of a congruence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum IsometrySpec {
    Rotation { center: PointSpec, angle: f64 },
    Translation { axis: GeodesicSpec, length: f64 },
    Reflection { axis: GeodesicSpec },
    PointReflection { center: PointSpec },
    Parabolic { ideal_angle: f64, parameter: f64 },
}

impl IsometrySpec {
    pub fn resolve(&self, geometry: Geometry) -> Result<Isometry> {
        match *self {
            IsometrySpec::Rotation { center, angle } => Ok(Isometry::rotation(&center.resolve(geometry)?, angle)),
            IsometrySpec::Translation { axis, length } => Isometry::translation(&axis.resolve(geometry)?, length),
            IsometrySpec::Reflection { axis } => Isometry::reflection(&axis.resolve(geometry)?),
            IsometrySpec::PointReflection { center } => Ok(Isometry::point_reflection(&center.resolve(geometry)?)),
            IsometrySpec::Parabolic { ideal_angle, parameter } => {
                if geometry != Geometry::Hyperbolic {
                    return Err(Error::UnsupportedGenerator("parabolic isometries exist only in H²"));
                }
                Isometry::parabolic(&IdealPoint::at_angle(geometry, ideal_angle), parameter)
            }
        }
    }
}

/// Composes a list of generators; the first one is applied last.
pub fn compose_all(geometry: Geometry, specs: &[IsometrySpec]) -> Result<Isometry> {
    specs.iter().try_fold(Isometry::identity(geometry), |acc, s| {
        acc.compose(&s.resolve(geometry)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let p: PointSpec = serde_json::from_str(r#"{"angle": 1.0, "distance": 0.5}"#).unwrap();
        assert_eq!(
            p,
            PointSpec::Polar {
                angle: 1.0,
                distance: 0.5
            }
        );
        let q: PointSpec = serde_json::from_str("[0.0, 0.0, 1.0]").unwrap();
        assert_eq!(
            q.resolve(Geometry::Hyperbolic).unwrap(),
            Point::origin(Geometry::Hyperbolic)
        );
        let g: GeodesicSpec = serde_json::from_str(r#"{"ideal": [0.0, 2.0]}"#).unwrap();
        assert!(g.resolve(Geometry::Hyperbolic).is_ok());
        assert!(g.resolve(Geometry::Spherical).is_err());
        let iso: Vec<IsometrySpec> =
            serde_json::from_str(r#"[{"type": "rotation", "center": [0, 0, 1], "angle": 0.5}]"#).unwrap();
        let m = compose_all(Geometry::Euclidean, &iso).unwrap();
        assert_eq!(m.orientation(), 1);
    }
}
