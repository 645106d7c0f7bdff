//! Convex regions bounded by constant-curvature curves in the sphere, the
//! Euclidean plane and the hyperbolic plane.
//!
//! All three planes share one ambient representation: points are 3-vectors
//! on the model surface of the bilinear form `B(u, v) = u1 v1 + u2 v2 + σ u3 v3`
//! (the unit sphere for σ = +1, the upper sheet of the hyperboloid for
//! σ = −1, and the affine chart `x3 = 1` for σ = 0). Cycles are plane sections
//! of that surface, isometries are 3×3 matrices.
//!
//! The crate builds regions ([`regions`]), intersects congruent copies of
//! them ([`intersect`]), and searches the result for central and axial
//! symmetries ([`symmetry`]). [`scenarios`] and [`suite`] drive randomized
//! checks of the classification results for these intersections.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cycles;
pub mod error;
pub mod geom;
pub mod intersect;
pub mod regions;
pub mod render;
pub mod scenarios;
pub mod spec;
pub mod suite;
pub mod symmetry;
pub mod trig;

pub use cycles::{Cycle, CycleKind, CyclePoints, Side};
pub use error::{Error, Result};
pub use geom::{distance, Geometry, IdealPoint, Isometry, Point};
pub use intersect::{intersect, Arc, Chain, Intersection, IntersectionRegion, Vertex};
pub use regions::{ConvexRegion, IdealGraph, Membership, RegionSpec};
pub use symmetry::{SymmetryKind, SymmetryReport};
