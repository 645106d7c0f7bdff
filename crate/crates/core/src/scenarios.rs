//! Named configurations of two regions and a seeded trial runner that checks
//! which symmetries their random congruent intersections carry.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::Cycle;
use crate::error::{Error, Result};
use crate::geom::{Geometry, IdealPoint, Isometry, Point, Vec3};
use crate::intersect::{intersect, Intersection, IntersectionRegion};
use crate::regions::{ChordSpec, ConvexRegion, HalfSide, RegionSpec};
use crate::spec::{GeodesicSpec, PointSpec};
use crate::symmetry::detect;

const S: Geometry = Geometry::Spherical;
const E: Geometry = Geometry::Euclidean;
const H: Geometry = Geometry::Hyperbolic;

/// Samples per arc when measuring diameters for the `eps` filter.
const DIAMETER_SAMPLES: usize = 48;
/// Attempts evaluated together before the stopping rule is checked.
const BATCH: usize = 128;

macro_rules! catalog {
    ($($variant:ident => $name:literal,)*) => {
        /// Every configuration the runner knows.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum ScenarioName {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl ScenarioName {
            pub const ALL: &'static [ScenarioName] = &[$(ScenarioName::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(ScenarioName::$variant => $name,)*
                }
            }
        }
    };
}

catalog! {
    Thm3 => "thm3",
    Thm3Incongruent => "thm3_incongruent",
    Thm4Circles => "thm4_circles",
    Thm4Strips => "thm4_strips",
    Thm4IncongruentStrips => "thm4_incongruent_strips",
    Thm4CircleHalfplane => "thm4_circle_halfplane",
    Thm4CircleStrip => "thm4_circle_strip",
    Thm4Halfplanes => "thm4_halfplanes",
    Thm5 => "thm5",
    Thm6aCircles => "thm6a_circles",
    Thm6aCircleParaball => "thm6a_circle_paraball",
    Thm6aParaballs => "thm6a_paraballs",
    Thm6aCircleHyperdomain => "thm6a_circle_hyperdomain",
    Thm6aHyperdomains => "thm6a_hyperdomains",
    Thm6aCircleHalfplane => "thm6a_circle_halfplane",
    Thm6aHalfplanes => "thm6a_halfplanes",
    Thm6aIncongruentHyperdomains => "thm6a_incongruent_hyperdomains",
    Thm6b => "thm6b",
    Thm6c => "thm6c",
    Thm6d => "thm6d",
    Thm6e => "thm6e",
    ParaballPair => "paraball_pair",
    Quadrangle => "quadrangle",
    CurvatureMismatch => "curvature_mismatch",
    ParacycleNotCentral => "paracycle_not_central",
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown scenario `{s}`")))
    }
}

impl ScenarioName {
    pub fn geometry(self) -> Geometry {
        use ScenarioName::*;
        match self {
            Thm3 | Thm3Incongruent => S,
            Thm4Circles
            | Thm4Strips
            | Thm4IncongruentStrips
            | Thm4CircleHalfplane
            | Thm4CircleStrip
            | Thm4Halfplanes => E,
            _ => H,
        }
    }

    /// Parameters with their defaults. Any scenario also accepts `eps`, an upper
    /// bound on the diameter of the intersections that are counted.
    pub fn defaults(self) -> &'static [(&'static str, f64)] {
        use ScenarioName::*;
        match self {
            Thm3 => &[("r", 0.7)],
            Thm3Incongruent => &[("r1", 0.5), ("r2", 0.9), ("eps", 0.9)],
            Thm4Circles => &[("r", 1.0)],
            Thm4Strips => &[("w", 1.0)],
            Thm4IncongruentStrips => &[("w1", 1.0), ("w2", 1.5)],
            Thm4CircleHalfplane => &[("r", 1.0)],
            Thm4CircleStrip => &[("r", 1.0), ("w", 1.0)],
            Thm4Halfplanes => &[],
            Thm5 => &[("r", 0.8)],
            Thm6aCircles => &[("r1", 0.5), ("r2", 0.9)],
            Thm6aCircleParaball => &[("r", 0.7)],
            Thm6aParaballs => &[],
            Thm6aCircleHyperdomain => &[("r", 0.7), ("l", 0.5)],
            Thm6aHyperdomains => &[("l", 0.5)],
            Thm6aCircleHalfplane => &[("r", 0.7)],
            Thm6aHalfplanes => &[],
            Thm6aIncongruentHyperdomains => &[("l1", 0.3), ("l2", 0.8)],
            Thm6b => &[("r", 0.7), ("below", 0.3), ("above", 0.6)],
            Thm6c => &[("r", 0.3), ("d1", 0.61), ("d2", 0.8), ("l", 0.2)],
            Thm6d => &[("l", 0.5)],
            Thm6e => &[("l", 0.5)],
            ParaballPair => &[],
            Quadrangle => &[("t0", -0.4), ("s", 0.8)],
            CurvatureMismatch => &[("l", 0.5)],
            ParacycleNotCentral => &[],
        }
    }

    /// Optional parameters without a default.
    fn optional(self) -> &'static [&'static str] {
        match self {
            ScenarioName::Quadrangle => &["eps", "delta"],
            _ => &["eps"],
        }
    }

    /// The pattern of symmetries the classification predicts.
    pub fn expected(self) -> Expected {
        use ScenarioName::*;
        match self {
            Thm3 | Thm4Circles | Thm4Strips | Thm5 | ParaballPair => Expected::CentralAlways,
            Thm3Incongruent | ParacycleNotCentral => Expected::NotCentral,
            Thm4IncongruentStrips => Expected::CentralNotAxial,
            Thm6aIncongruentHyperdomains | Quadrangle | CurvatureMismatch => Expected::NoneGeneric,
            _ => Expected::AxialAlways,
        }
    }

    pub fn is_counterexample(self) -> bool {
        matches!(
            self,
            ScenarioName::Quadrangle | ScenarioName::CurvatureMismatch | ScenarioName::ParacycleNotCentral
        )
    }
}

/// A pattern of tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    /// Every counted intersection is centrally symmetric.
    CentralAlways,
    /// Every counted intersection is axially symmetric.
    AxialAlways,
    /// No counted intersection has a non-trivial symmetry.
    NoneGeneric,
    /// Every counted intersection is axially symmetric and none is centrally symmetric.
    NotCentral,
    /// Every counted intersection is centrally symmetric and none is axially symmetric.
    CentralNotAxial,
}

impl Expected {
    pub fn matches(self, s: &TrialStats) -> bool {
        let all = s.trials_with_interior;
        all > 0
            && match self {
                Expected::CentralAlways => s.count_central == all,
                Expected::AxialAlways => s.count_axial == all,
                Expected::NoneGeneric => s.count_none == all,
                Expected::NotCentral => s.count_axial == all && s.count_central == 0,
                Expected::CentralNotAxial => s.count_central == all && s.count_axial == 0,
            }
    }
}

fn default_n() -> usize {
    100
}

fn default_tol() -> f64 {
    crate::symmetry::DEFAULT_TOL
}

/// One entry of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub name: ScenarioName,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Defaults to the catalog's prediction for `name`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl ScenarioSpec {
    pub fn new(name: ScenarioName) -> ScenarioSpec {
        ScenarioSpec {
            name,
            params: BTreeMap::new(),
            n: default_n(),
            seed: 0,
            tol: default_tol(),
            expected: None,
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn expected(&self) -> Expected {
        self.expected.unwrap_or_else(|| self.name.expected())
    }

    /// Checks parameter names and the trial settings.
    pub fn validate(&self) -> Result<()> {
        for (k, v) in &self.params {
            let known = self.name.defaults().iter().any(|(d, _)| d == k) || self.name.optional().contains(&k.as_str());
            if !known {
                return Err(Error::InvalidSpec(format!("{}: unknown parameter `{k}`", self.name)));
            }
            if !v.is_finite() {
                return Err(Error::InvalidSpec(format!(
                    "{}: parameter `{k}` is not finite",
                    self.name
                )));
            }
        }
        if self.n == 0 {
            return Err(Error::InvalidSpec(format!("{}: n must be at least 1", self.name)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidSpec(format!("{}: tol must be positive", self.name)));
        }
        Ok(())
    }

    fn param(&self, key: &str) -> Option<f64> {
        self.params
            .get(key)
            .copied()
            .or_else(|| self.name.defaults().iter().find(|(k, _)| *k == key).map(|&(_, v)| v))
    }

    fn get(&self, key: &str) -> f64 {
        self.param(key).expect("parameter listed in the catalog")
    }

    fn positive(&self, key: &str) -> Result<f64> {
        let v = self.get(key);
        if !(v > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "{}: `{key}` must be positive, got {v}",
                self.name
            )));
        }
        Ok(v)
    }

    fn radius(&self, key: &str) -> Result<f64> {
        let r = self.positive(key)?;
        if self.name.geometry() == S && r > PI / 2.0 {
            return Err(Error::InvalidSpec(format!("{}: `{key}` = {r} exceeds π/2", self.name)));
        }
        Ok(r)
    }
}

/// Tallies of one scenario run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    /// Draws that produced a stable configuration.
    pub trials_attempted: usize,
    pub trials_with_interior: usize,
    pub count_central: usize,
    pub count_axial: usize,
    pub count_none: usize,
    /// Draws rejected by the scenario's filter (diameter, compactness, crossing base lines).
    pub count_filtered: usize,
    /// Draws that were numerically unstable and redrawn.
    pub count_unstable: usize,
    /// Largest residual among accepted symmetries.
    pub max_residual: f64,
    pub seed: u64,
}

fn ball(g: Geometry, r: f64) -> RegionSpec {
    RegionSpec::Ball {
        geometry: g,
        center: PointSpec::default(),
        radius: r,
    }
}

fn line0() -> GeodesicSpec {
    GeodesicSpec::Normal {
        normal_angle: 0.0,
        distance: 0.0,
    }
}

fn half_plane(g: Geometry) -> RegionSpec {
    RegionSpec::HalfPlane {
        geometry: g,
        line: line0(),
        side: HalfSide::Near,
    }
}

fn strip(w: f64) -> RegionSpec {
    RegionSpec::Strip {
        line: line0(),
        width: w,
    }
}

fn paraball() -> RegionSpec {
    RegionSpec::Paraball {
        ideal_angle: 0.0,
        through: PointSpec::default(),
    }
}

fn hyperdomain(l: f64) -> RegionSpec {
    RegionSpec::Hyperdomain {
        base: line0(),
        distance: l,
        side: HalfSide::Near,
    }
}

/// Three chords around the origin whose hypercycles (pushed out by `l`) are at
/// mutual distances `d1` (left/right pair) and `d2` (bottom to either side).
fn thm6c_assembly(d1: f64, d2: f64, l: f64) -> Result<RegionSpec> {
    let a = 0.5 * (d1 - 2.0 * l);
    let base2 = d2 - 2.0 * l;
    if !(a > 0.0) || !(base2 > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "thm6c: distances ({d1}, {d2}) must exceed twice the hypercycle distance {l}"
        )));
    }
    // right-angled pentagon: cosh(base2) = sinh(a) sinh(y)
    let y = (base2.cosh() / a.sinh()).asinh();
    let tx = a.tanh().acos();
    let ty = y.tanh().acos();
    let q = PI / 2.0;
    let chords = vec![
        ChordSpec {
            ends: [tx, -tx],
            distance: l,
        },
        ChordSpec {
            ends: [PI - tx, PI + tx],
            distance: l,
        },
        ChordSpec {
            ends: [-q - ty, -q + ty],
            distance: l,
        },
    ];
    Ok(RegionSpec::ChordAssembly { chords, witness: None })
}

/// The two region specs of a theorem case.
pub fn case_specs(spec: &ScenarioSpec) -> Result<(RegionSpec, RegionSpec)> {
    use ScenarioName::*;
    spec.validate()?;
    Ok(match spec.name {
        Thm3 => {
            let r = spec.radius("r")?;
            (ball(S, r), ball(S, r))
        }
        Thm3Incongruent => (ball(S, spec.radius("r1")?), ball(S, spec.radius("r2")?)),
        Thm4Circles => {
            let r = spec.radius("r")?;
            (ball(E, r), ball(E, r))
        }
        Thm4Strips => {
            let w = spec.positive("w")?;
            (strip(w), strip(w))
        }
        Thm4IncongruentStrips => (strip(spec.positive("w1")?), strip(spec.positive("w2")?)),
        Thm4CircleHalfplane => (ball(E, spec.radius("r")?), half_plane(E)),
        Thm4CircleStrip => (ball(E, spec.radius("r")?), strip(spec.positive("w")?)),
        Thm4Halfplanes => (half_plane(E), half_plane(E)),
        Thm5 => {
            let r = spec.radius("r")?;
            (ball(H, r), ball(H, r))
        }
        Thm6aCircles => (ball(H, spec.radius("r1")?), ball(H, spec.radius("r2")?)),
        Thm6aCircleParaball => (ball(H, spec.radius("r")?), paraball()),
        Thm6aParaballs | ParaballPair => (paraball(), paraball()),
        Thm6aCircleHyperdomain => (ball(H, spec.radius("r")?), hyperdomain(spec.positive("l")?)),
        Thm6aHyperdomains => {
            let l = spec.positive("l")?;
            (hyperdomain(l), hyperdomain(l))
        }
        Thm6aCircleHalfplane => (ball(H, spec.radius("r")?), half_plane(H)),
        Thm6aHalfplanes => (half_plane(H), half_plane(H)),
        Thm6aIncongruentHyperdomains => {
            let (l1, l2) = (spec.positive("l1")?, spec.positive("l2")?);
            if (l1 - l2).abs() < 1e-9 {
                return Err(Error::InvalidSpec(
                    "thm6a_incongruent_hyperdomains: l1 and l2 must differ".into(),
                ));
            }
            (hyperdomain(l1), hyperdomain(l2))
        }
        Thm6b => {
            let (below, above) = (spec.get("below"), spec.get("above"));
            if !(below >= 0.0 && above >= 0.0) || below + above <= 0.0 {
                return Err(Error::InvalidSpec(format!(
                    "thm6b: distances below = {below}, above = {above} must be non-negative, not both zero"
                )));
            }
            let band = RegionSpec::HyperBand {
                base: line0(),
                below,
                above,
            };
            (ball(H, spec.radius("r")?), band)
        }
        Thm6c => {
            let r = spec.radius("r")?;
            let (d1, d2, l) = (spec.get("d1"), spec.get("d2"), spec.get("l"));
            if !(l >= 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "thm6c: hypercycle distance {l} is negative"
                )));
            }
            if d1.min(d2) < 2.0 * r {
                return Err(Error::InvalidSpec(format!(
                    "thm6c: mutual distances ({d1}, {d2}) must be at least 2r = {}",
                    2.0 * r
                )));
            }
            (ball(H, r), thm6c_assembly(d1, d2, l)?)
        }
        Thm6d => (
            paraball(),
            RegionSpec::ParallelDomain {
                base: line0(),
                distance: spec.positive("l")?,
            },
        ),
        Thm6e => {
            let l = spec.positive("l")?;
            let d = RegionSpec::ParallelDomain {
                base: line0(),
                distance: l,
            };
            (d.clone(), d)
        }
        Quadrangle | CurvatureMismatch | ParacycleNotCentral => {
            return Err(Error::InvalidSpec(format!(
                "{} is a counterexample; use build_counterexample",
                spec.name
            )))
        }
    })
}

/// Builds the two regions of a theorem case and re-checks its defining conditions.
pub fn build_case(spec: &ScenarioSpec) -> Result<(ConvexRegion, ConvexRegion)> {
    let (a, b) = case_specs(spec)?;
    let (k, l) = (a.build()?, b.build()?);
    if spec.name == ScenarioName::Thm6c {
        let need = 2.0 * spec.get("r");
        let got = l.min_component_distance();
        if got < need - 1e-8 {
            return Err(Error::InvalidSpec(format!(
                "thm6c: component distance {got} is below 2r = {need}"
            )));
        }
    }
    Ok((k, l))
}

/// A counterexample configuration: the intersection studied is `φK ∩ ψL`.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub k: ConvexRegion,
    pub phi: Isometry,
    pub l: ConvexRegion,
    pub psi: Isometry,
}

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `T(θ, t) ∘ R(α)` with `α, θ` uniform in `[0, 2π)` and `t` uniform in `[0, 2·scale]`.
fn random_motion(g: Geometry, scale: f64, rng: &mut ChaCha8Rng) -> Result<Isometry> {
    let alpha = rng.gen_range(0.0..TAU);
    let theta = rng.gen_range(0.0..TAU);
    let t = rng.gen_range(0.0..=2.0 * scale);
    Isometry::transvection(&Point::polar(g, theta, t)).compose(&Isometry::rotation(&Point::origin(g), alpha))
}

fn orient(line: Cycle, witness: &Point) -> Result<Cycle> {
    if line.inside_value(witness) < 0.0 {
        line.reversed()
    } else {
        Ok(line)
    }
}

fn mirror(p: &Point) -> Result<Point> {
    let x = p.coords();
    Point::new(p.geometry(), Vec3::new(x.x, -x.y, x.z))
}

/// Two asymptotic geodesics cut by two lines through points on them. With
/// `delta = 0` the four points are placed symmetrically about the x-axis.
fn quadrangle(t0: f64, s: f64, delta: f64, u: [f64; 4]) -> Result<Counterexample> {
    let far = 2.2;
    let l1 = Cycle::geodesic_ideal(&IdealPoint::at_angle(H, 0.0), &IdealPoint::at_angle(H, far))?;
    let l2 = Cycle::geodesic_ideal(&IdealPoint::at_angle(H, 0.0), &IdealPoint::at_angle(H, -far))?;
    let origin = Point::origin(H);
    let k = ConvexRegion::new(H, vec![orient(l1, &origin)?, orient(l2, &origin)?], origin)?;

    let x1 = l1.point_at(t0 + delta * u[0]);
    let x2 = mirror(&l1.point_at(t0 + delta * u[1]))?;
    let y1 = l1.point_at(t0 + s + delta * u[2]);
    let y2 = mirror(&l1.point_at(t0 + s + delta * u[3]))?;
    let sum = x1.coords() + x2.coords() + y1.coords() + y2.coords();
    let w = Point::new(H, sum / (-H.form(&sum, &sum)).sqrt())?;
    let a = orient(Cycle::geodesic_through(&x1, &x2)?, &w)?;
    let b = orient(Cycle::geodesic_through(&y1, &y2)?, &w)?;
    let l = ConvexRegion::new(H, vec![a, b], w)?;
    let id = Isometry::identity(H);
    Ok(Counterexample { k, phi: id, l, psi: id })
}

/// Builds draw `index` of a counterexample. Each draw also moves the whole
/// configuration by a random congruence, except for the quadrangle, whose
/// draws vary the perturbation instead.
pub fn build_counterexample(spec: &ScenarioSpec, index: u64) -> Result<Counterexample> {
    spec.validate()?;
    let mut rng = trial_rng(spec.seed, index);
    match spec.name {
        ScenarioName::Quadrangle => {
            let delta = match spec.param("delta") {
                Some(d) if d >= 0.0 => d,
                Some(d) => return Err(Error::InvalidSpec(format!("quadrangle: delta = {d} is negative"))),
                None => rng.gen_range(0.02..=0.1),
            };
            let s = spec.positive("s")?;
            let u = [(); 4].map(|_| rng.gen_range(-1.0..=1.0));
            quadrangle(spec.get("t0"), s, delta, u)
        }
        ScenarioName::CurvatureMismatch => {
            // paraball centred at an end of the hyperdomain's base line
            let k = paraball().build()?;
            let l = RegionSpec::Hyperdomain {
                base: GeodesicSpec::Ideal { ideal: [0.0, 2.2] },
                distance: spec.positive("l")?,
                side: HalfSide::Near,
            }
            .build()?;
            let g = random_motion(H, 1.0, &mut rng)?;
            Ok(Counterexample { k, phi: g, l, psi: g })
        }
        ScenarioName::ParacycleNotCentral => {
            let k = paraball().build()?;
            let g = random_motion(H, 1.0, &mut rng)?;
            let fix = Isometry::parabolic(&IdealPoint::at_angle(H, 0.0), rng.gen_range(-2.0..=2.0))?;
            let psi = g.compose(&fix)?;
            Ok(Counterexample {
                l: k.clone(),
                k,
                phi: g,
                psi,
            })
        }
        n => Err(Error::InvalidSpec(format!("{n} is not a counterexample"))),
    }
}

fn region_scale(spec: &RegionSpec) -> f64 {
    match spec {
        RegionSpec::Ball { radius, .. } => *radius,
        RegionSpec::Strip { width, .. } => *width,
        RegionSpec::Hyperdomain { distance, .. } | RegionSpec::ParallelDomain { distance, .. } => distance.max(1.0),
        RegionSpec::HyperBand { below, above, .. } => (below + above).max(1.0),
        _ => 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Filter {
    Compact,
    CrossingBases,
}

enum Prepared {
    Pair {
        k: ConvexRegion,
        l: ConvexRegion,
        scale: f64,
        filter: Option<Filter>,
    },
    Counter,
}

enum Outcome {
    Unstable,
    NoInterior,
    Filtered,
    Classified { central: bool, axial: bool, residual: f64 },
}

fn bases_cross(a: &Cycle, b: &Cycle) -> bool {
    let (m, n) = (a.normal(), b.normal());
    let c = H.form(m, n) / (H.form(m, m) * H.form(n, n)).sqrt();
    c.abs() < 1.0 - 1e-9
}

fn accepted(region: &IntersectionRegion, filter: Option<Filter>, eps: Option<f64>, a: &Cycle, b: &Cycle) -> bool {
    match filter {
        Some(Filter::Compact) if !region.is_bounded() => return false,
        Some(Filter::CrossingBases) if !bases_cross(a, b) => return false,
        _ => {}
    }
    match eps {
        Some(e) => region.diameter(DIAMETER_SAMPLES) <= e,
        None => true,
    }
}

/// What draw `index` of a scenario produced, before classification.
#[derive(Debug, Clone)]
pub enum Draw {
    /// Numerically unstable; the runner redraws.
    Unstable,
    NoInterior,
    /// Rejected by the scenario's filter.
    Filtered,
    Region(Box<IntersectionRegion>),
}

fn draw_prepared(spec: &ScenarioSpec, prepared: &Prepared, index: u64) -> Result<Draw> {
    let (k, phi, l, psi, filter) = match prepared {
        Prepared::Pair { k, l, scale, filter } => {
            let mut rng = trial_rng(spec.seed, index);
            let phi = random_motion(k.geometry(), *scale, &mut rng)?;
            let psi = random_motion(k.geometry(), *scale, &mut rng)?;
            (k.clone(), phi, l.clone(), psi, *filter)
        }
        Prepared::Counter => {
            let c = build_counterexample(spec, index)?;
            (c.k, c.phi, c.l, c.psi, None)
        }
    };
    let region = match intersect(&k, &phi, &l, &psi) {
        Ok(Intersection::Region(r)) => r,
        Ok(_) => return Ok(Draw::NoInterior),
        Err(Error::Unstable(_)) => return Ok(Draw::Unstable),
        Err(e) => return Err(e),
    };
    let a = k.components()[0].transform(&phi)?;
    let b = l.components()[0].transform(&psi)?;
    if !accepted(&region, filter, spec.param("eps"), &a, &b) {
        return Ok(Draw::Filtered);
    }
    Ok(Draw::Region(region))
}

/// The intersection of draw `index` of `spec`, exactly as [`run_trials`] sees it.
pub fn draw(spec: &ScenarioSpec, index: u64) -> Result<Draw> {
    spec.validate()?;
    draw_prepared(spec, &prepare(spec)?, index)
}

fn attempt(spec: &ScenarioSpec, prepared: &Prepared, index: u64) -> Result<Outcome> {
    Ok(match draw_prepared(spec, prepared, index)? {
        Draw::Unstable => Outcome::Unstable,
        Draw::NoInterior => Outcome::NoInterior,
        Draw::Filtered => Outcome::Filtered,
        Draw::Region(region) => {
            let report = detect(&region, spec.tol);
            Outcome::Classified {
                central: report.is_centrally_symmetric,
                axial: report.is_axially_symmetric,
                residual: report.max_residual(),
            }
        }
    })
}

fn outcomes(spec: &ScenarioSpec, prepared: &Prepared, range: std::ops::Range<u64>) -> Vec<Result<Outcome>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        range.into_par_iter().map(|i| attempt(spec, prepared, i)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(|i| attempt(spec, prepared, i)).collect()
    }
}

fn prepare(spec: &ScenarioSpec) -> Result<Prepared> {
    if spec.name.is_counterexample() {
        return Ok(Prepared::Counter);
    }
    let (a, b) = case_specs(spec)?;
    let (k, l) = build_case(spec)?;
    let filter = match spec.name {
        ScenarioName::ParaballPair => Some(Filter::Compact),
        ScenarioName::Thm6aIncongruentHyperdomains => Some(Filter::CrossingBases),
        _ => None,
    };
    Ok(Prepared::Pair {
        k,
        l,
        scale: region_scale(&a).max(region_scale(&b)),
        filter,
    })
}

/// Runs `spec.n` stable draws (more if fewer than `n/10` of them had interior).
///
/// Draw `i` uses the ChaCha8 stream `i` of `spec.seed`, so the result does not
/// depend on scheduling. Unstable draws are redrawn; after `20n` raw draws
/// without enough interior intersections the run fails as sampling-starved.
pub fn run_trials(spec: &ScenarioSpec) -> Result<TrialStats> {
    spec.validate()?;
    let prepared = prepare(spec)?;
    let n = spec.n;
    let needed = n.div_ceil(10);
    let max_draws = 20 * n as u64;
    let mut stats = TrialStats {
        trials_attempted: 0,
        trials_with_interior: 0,
        count_central: 0,
        count_axial: 0,
        count_none: 0,
        count_filtered: 0,
        count_unstable: 0,
        max_residual: 0.0,
        seed: spec.seed,
    };
    let done = |s: &TrialStats| s.trials_attempted >= n && s.trials_with_interior >= needed;
    let mut next = 0u64;
    while !done(&stats) {
        if next >= max_draws {
            return Err(Error::SamplingStarved {
                attempted: stats.trials_attempted,
                with_interior: stats.trials_with_interior,
                needed,
            });
        }
        let end = (next + BATCH as u64).min(max_draws);
        for outcome in outcomes(spec, &prepared, next..end) {
            next += 1;
            match outcome? {
                Outcome::Unstable => stats.count_unstable += 1,
                Outcome::NoInterior => stats.trials_attempted += 1,
                Outcome::Filtered => {
                    stats.trials_attempted += 1;
                    stats.count_filtered += 1;
                }
                Outcome::Classified {
                    central,
                    axial,
                    residual,
                } => {
                    stats.trials_attempted += 1;
                    stats.trials_with_interior += 1;
                    stats.count_central += central as usize;
                    stats.count_axial += axial as usize;
                    stats.count_none += (!central && !axial) as usize;
                    stats.max_residual = stats.max_residual.max(residual);
                }
            }
            if done(&stats) {
                break;
            }
        }
    }
    Ok(stats)
}
