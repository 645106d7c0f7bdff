//! Closed-form chord angles for a circle cut by a hypercycle in H².
//!
//! A circle of radius `r` has its centre `O` at signed distance `c` from a
//! geodesic `b`; the constraint set is `{x : dist(x, b) ≤ l}` for a signed `l`.
//! With `A` the foot of `O` on `b` and `C` a common point of the circle and the
//! hypercycle at distance `l`, the half central angle is `ω = ∠COA`.

use serde::{Deserialize, Serialize};

use crate::cycles::{Cycle, CycleKind};
use crate::error::{Error, Result};
use crate::geom::{Geometry, Point};

const CLAMP_TOL: f64 = 1e-12;

/// The solved configuration of one `(r, c, l)` query.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChordAngle {
    pub r: f64,
    pub c: f64,
    pub l: f64,
    /// Half central angle `∠COA`, in `[0, π]`.
    pub omega: f64,
    /// Distance `AC`.
    pub d: f64,
    /// Angle `∠OAC`.
    pub alpha: f64,
}

impl ChordAngle {
    /// `sinh²(BC)` recovered from `d` and `α` through the right triangle `ABC`.
    pub fn sinh2_bc(&self) -> f64 {
        let s = self.d.sinh() * self.alpha.cos();
        s * s
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

fn clamp_unit(x: f64, what: &str) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain(format!("{what} is NaN")));
    }
    if !(-1.0 - CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&x) {
        return Err(Error::Domain(format!("{what} = {x} is outside [-1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// Whether the circle meets the constraint set's boundary, i.e. `|c − l| ≤ r`.
pub fn chord_exists(r: f64, c: f64, l: f64) -> Result<bool> {
    check_radius(r)?;
    Ok((c - l).abs() <= r)
}

/// The half central angle `ω` from `sinh l = cosh r sinh c − sinh r cosh c cos ω`.
pub fn half_central_angle(r: f64, c: f64, l: f64) -> Result<f64> {
    if !chord_exists(r, c, l)? {
        return Err(Error::NoIntersection(format!(
            "|c - l| = {} exceeds r = {r}",
            (c - l).abs()
        )));
    }
    let cos_w = (r.cosh() * c.sinh() - l.sinh()) / (r.sinh() * c.cosh());
    Ok(clamp_unit(cos_w, "cos ω")?.acos())
}

/// The side `d = AC` of the triangle `OAC` with `OA = c`, `OC = r` and angle `ω` at `O`.
pub fn law_of_cosines_d(r: f64, c: f64, omega: f64) -> Result<f64> {
    if !(r >= 0.0) || !(c >= 0.0) {
        return Err(Error::Domain(format!("r = {r} and c = {c} must be non-negative")));
    }
    if !(0.0..=std::f64::consts::PI).contains(&omega) {
        return Err(Error::Domain(format!("ω = {omega} is outside [0, π]")));
    }
    let rhs = r.cosh() * c.cosh() - r.sinh() * c.sinh() * omega.cos();
    if rhs < 1.0 - CLAMP_TOL {
        return Err(Error::Domain(format!("cosh d = {rhs} is below 1")));
    }
    Ok(rhs.max(1.0).acosh())
}

/// The angle `α = ∠OAC` from the sine law `sin α = sin ω sinh r / sinh d`.
///
/// `α` is obtuse exactly when `C` lies beyond `A` as seen from `O`, which is read
/// off the sign of `cosh r − cosh c cosh d`.
pub fn angle_at_foot(r: f64, c: f64, d: f64, omega: f64) -> Result<f64> {
    if d == 0.0 {
        return Ok(std::f64::consts::FRAC_PI_2);
    }
    let s = clamp_unit(omega.sin() * r.sinh() / d.sinh(), "sin α")?;
    let acute = s.asin();
    Ok(if r.cosh() < c.cosh() * d.cosh() {
        acute
    } else {
        std::f64::consts::PI - acute
    })
}

/// Solves a query with `c ≥ 0`, returning `ω`, `d` and `α` together.
pub fn solve(r: f64, c: f64, l: f64) -> Result<ChordAngle> {
    if c < 0.0 {
        return Err(Error::Domain(format!(
            "c = {c} must be non-negative; flip the sign of c and l"
        )));
    }
    let omega = half_central_angle(r, c, l)?;
    let d = law_of_cosines_d(r, c, omega)?;
    let alpha = angle_at_foot(r, c, d, omega)?;
    Ok(ChordAngle {
        r,
        c,
        l,
        omega,
        d,
        alpha,
    })
}

/// [`solve`] extended to `c < 0` by flipping the signs of `c` and `l`; `ω` becomes `π − ω`.
pub fn solve_signed(r: f64, c: f64, l: f64) -> Result<ChordAngle> {
    if c >= 0.0 {
        return solve(r, c, l);
    }
    let q = solve(r, -c, -l)?;
    Ok(ChordAngle {
        c,
        l,
        omega: std::f64::consts::PI - q.omega,
        ..q
    })
}

/// Reads `(r, c, l)` off an H² circle and a hypercycle or geodesic. The distances
/// are signed so that the convex side of `bound` is `{dist ≤ l}`.
pub fn query_from_cycles(circle: &Cycle, bound: &Cycle) -> Result<(f64, f64, f64)> {
    let g = Geometry::Hyperbolic;
    if circle.geometry() != g || bound.geometry() != g {
        return Err(Error::UnsupportedGeometry {
            op: "chord angle query",
            geometry: circle.geometry(),
        });
    }
    let r = match circle.kind() {
        CycleKind::Circle { radius } => radius,
        k => return Err(Error::Kind(format!("expected a circle, got {k:?}"))),
    };
    if !matches!(bound.kind(), CycleKind::Hypercycle { .. } | CycleKind::Geodesic) {
        return Err(Error::Kind(format!(
            "expected a hypercycle or geodesic, got {:?}",
            bound.kind()
        )));
    }
    let center = Point::new(g, *circle.normal())?;
    // Canonical hypercycles and geodesics keep `{B(x, n) ≤ h}` as their convex side.
    let c = g.form(center.coords(), bound.normal()).asinh();
    let l = bound.offset().asinh();
    Ok((r, c, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    /// Measures `ω` by building the curves and intersecting them.
    fn geometric_omega(r: f64, c: f64, l: f64) -> f64 {
        let g = Geometry::Hyperbolic;
        let base = Cycle::geodesic_normal(g, &Vec3::new(1.0, 0.0, 0.0), 0.0).unwrap();
        let bound = Cycle::hypercycle(&base, l).unwrap();
        let center = Point::new(g, Vec3::new(c.sinh(), 0.0, c.cosh())).unwrap();
        let circle = Cycle::circle(&center, r).unwrap();
        let cp = circle.cycle_points(&bound).unwrap();
        assert!(!cp.points.is_empty(), "no points for ({r}, {c}, {l})");
        let towards_base = -Vec3::new(c.cosh(), 0.0, c.sinh());
        let dir = center.direction_to(&cp.points[0]);
        g.form(&dir, &towards_base).clamp(-1.0, 1.0).acos()
    }

    #[test]
    fn existence_examples() {
        assert!(chord_exists(1.0, 0.5, 0.2).unwrap());
        assert!(!chord_exists(1.0, 3.0, 0.5).unwrap());
        assert!(chord_exists(1.0, 1.5, 0.5).unwrap());
        assert!(chord_exists(0.0, 0.0, 0.0).is_err());
        assert!(matches!(
            half_central_angle(1.0, 3.0, 0.5),
            Err(Error::NoIntersection(_))
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert!((half_central_angle(0.8, 0.0, 0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        for &(r, c) in &[(0.3, 0.1), (1.0, 0.5), (2.0, 1.7)] {
            let w = half_central_angle(r, c, 0.0).unwrap();
            assert!((c.tanh() - r.tanh() * w.cos()).abs() < 1e-12);
            assert!(half_central_angle(r, c, c - r * (1.0 - 1e-14)).unwrap().abs() < 1e-6);
            assert!((half_central_angle(r, c, c + r * (1.0 - 1e-14)).unwrap() - PI).abs() < 1e-6);
        }
        assert!((law_of_cosines_d(1.0, 0.4, 0.0).unwrap() - 0.6).abs() < 1e-7);
        assert!((law_of_cosines_d(1.0, 0.4, PI).unwrap() - 1.4).abs() < 1e-12);
        assert!(law_of_cosines_d(-1.0, 0.4, 1.0).is_err());
    }

    #[test]
    fn chain_closes() {
        let q = solve(1.0, 0.5, 0.2).unwrap();
        assert!((q.sinh2_bc() - 0.2f64.sinh().powi(2)).abs() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let r = rng.gen_range(0.1..2.0);
            let c = rng.gen_range(0.0..3.0);
            let l = c + rng.gen_range(-r..r);
            let q = solve(r, c, l).unwrap();
            assert!((q.sinh2_bc() - l.sinh().powi(2)).abs() < 1e-9 * (1.0 + l.sinh().powi(2)));
        }
    }

    #[test]
    fn agrees_with_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let r = rng.gen_range(0.1..2.0);
            let c = rng.gen_range(-2.0..2.0);
            let l = c + rng.gen_range(-(r - 0.01)..(r - 0.01));
            let w = half_central_angle(r, c, l).unwrap();
            let m = geometric_omega(r, c, l);
            assert!((w - m).abs() < 1e-9, "({r}, {c}, {l}): {w} vs {m}");
        }
    }

    #[test]
    fn sign_extension_and_monotonicity() {
        for &(r, c, l) in &[(1.0, 0.5, 0.2), (0.4, 0.1, -0.2), (1.5, 2.0, 1.0)] {
            let a = half_central_angle(r, c, l).unwrap();
            let b = half_central_angle(r, -c, -l).unwrap();
            assert!((a + b - PI).abs() < 1e-12);
        }
        let (r, l) = (0.9, 0.3);
        let mut prev = f64::INFINITY;
        for i in 1..200 {
            let c = l - r + 2.0 * r * i as f64 / 200.0;
            let w = half_central_angle(r, c, l).unwrap();
            assert!(w < prev);
            prev = w;
        }
    }

    #[test]
    fn query_signs_follow_convex_side() {
        let g = Geometry::Hyperbolic;
        let base = Cycle::geodesic_normal(g, &Vec3::new(1.0, 0.0, 0.0), 0.0).unwrap();
        let circle = Cycle::circle(&Point::origin(g), 0.7).unwrap();
        let (r, c, l) = query_from_cycles(&circle, &Cycle::hypercycle(&base, 0.3).unwrap()).unwrap();
        assert!((r - 0.7).abs() < 1e-12 && c.abs() < 1e-15 && (l - 0.3).abs() < 1e-12);
        let off = Cycle::circle(&Point::polar(g, 0.0, 0.2), 0.7).unwrap();
        let (_, c, l) = query_from_cycles(&off, &Cycle::hypercycle(&base, -0.3).unwrap()).unwrap();
        assert!((c + 0.2).abs() < 1e-12 && (l - 0.3).abs() < 1e-12);
    }
}
