//! B-spline modeling kernel built around float-format control polygons.
//!
//! A *float* polygon is the control polygon of a B-spline over the
//! unclamped uniform knots `0, 1, ..., N + n`. Modeling on this format only
//! ever divides segments in a given ratio, so it is numerically stable;
//! converting back from the clamped (Bézier-like) format needs
//! extrapolation and is ill-conditioned for high degrees.
//!
//! Modules:
//! - [`geometry`]: points, knot vectors, polygons and curves
//! - [`eval`]: de Boor evaluation, derivatives, Frenet data, evolutes
//! - [`convert`]: knot insertion, clamping, unclamping, Bézier extraction
//! - [`metrics`]: discrete curvature of polygons, harmonicity, level-n
//!   curvature, shape signatures
//! - [`constructors`]: Mineur–Farin polygons, circular-arc Bézier polygons,
//!   analytic curves
//! - [`positioning`]: endpoint positioning and composite curves
//! - [`experiments`]: the numerical experiments driven by the CLI
//! - [`io`]: JSON and CSV formats

// negated comparisons are how NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constructors;
pub mod convert;
pub mod error;
pub mod eval;
pub mod experiments;
pub mod geometry;
pub mod io;
pub mod metrics;
pub mod positioning;

pub use error::{Error, Result};
pub use geometry::{
    curve_of, make_float_polygon, regular_polygon_vertices, BSplineCurve, ControlPolygon, Dim, KnotVector,
    Orientation, Point, PolygonFormat, Vector,
};
