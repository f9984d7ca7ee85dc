//! Generators for test inputs: Mineur-Farin configurations, circular-arc
//! Bézier polygons and analytic curves sampled into float polygons.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::eval::{profile_from_jet, CurvatureProfile};
use crate::geometry::{ControlPolygon, Dim, KnotVector, Point, Vector};

/// A polygon with geometrically growing legs, a constant turning angle and
/// a constant dihedral (torsion) angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MineurFarinParams {
    /// Length of the first leg.
    pub l0: f64,
    /// Elongation coefficient: leg `k` has length `l0 * q^k`.
    pub q: f64,
    /// Turning angle between consecutive legs (radians, counterclockwise
    /// about the plane normal).
    pub theta: f64,
    /// Torsion angle between consecutive osculating planes (radians).
    #[serde(default)]
    pub phi: f64,
    pub count: usize,
    pub start: Point,
    pub start_dir: Vector,
}

impl MineurFarinParams {
    /// Planar configuration starting at the origin along +x.
    pub fn planar(l0: f64, q: f64, theta: f64, count: usize) -> Self {
        MineurFarinParams {
            l0,
            q,
            theta,
            phi: 0.0,
            count,
            start: Point::new2(0.0, 0.0),
            start_dir: Point::new2(1.0, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.l0 > 0.0) || !self.l0.is_finite() {
            return invalid(format!("initial leg length must be positive, got {}", self.l0));
        }
        if !(self.q > 0.0) || !self.q.is_finite() {
            return invalid(format!("elongation coefficient must be positive, got {}", self.q));
        }
        if !self.theta.is_finite() || !self.phi.is_finite() {
            return invalid("angles must be finite");
        }
        if self.count < 2 {
            return invalid(format!("a Mineur-Farin polygon needs at least 2 vertices, got {}", self.count));
        }
        if !self.start.is_finite() || self.start_dir.normalized().is_none() {
            return invalid("start point must be finite and start direction nonzero");
        }
        Ok(())
    }

    fn is_spatial(&self) -> bool {
        self.phi != 0.0 || self.start.dim() == Dim::Three || self.start_dir.dim() == Dim::Three
    }
}

/// Vertices of the Mineur-Farin configuration.
pub fn mineur_farin_vertices(p: &MineurFarinParams) -> Result<Vec<Point>> {
    p.validate()?;
    let spatial = p.is_spatial();
    let mut dir = p.start_dir.to_3d().normalized().expect("validated");
    let z = Point::new3(0.0, 0.0, 1.0);
    // plane normal: +z made orthogonal to the start direction
    let mut normal = (z - dir * dir.dot(&z))
        .normalized()
        .unwrap_or_else(|| Point::new3(1.0, 0.0, 0.0));

    let mut pts = Vec::with_capacity(p.count);
    let mut cur = p.start.to_3d();
    pts.push(cur);
    let mut len = p.l0;
    for k in 0..p.count - 1 {
        if k > 0 {
            if k > 1 {
                normal = normal.rotate_about(&dir, p.phi);
            }
            dir = dir.rotate_about(&normal, p.theta);
        }
        cur += dir * len;
        pts.push(cur);
        len *= p.q;
    }
    if !spatial {
        pts.iter_mut().for_each(|v| *v = Point::new2(v.x(), v.y()));
    }
    Ok(pts)
}

/// The Mineur-Farin configuration as a float polygon of the given degree.
pub fn mineur_farin_polygon(p: &MineurFarinParams, degree: usize) -> Result<ControlPolygon> {
    ControlPolygon::float(mineur_farin_vertices(p)?, degree)
}

/// Bézier polygon with equal legs and equal turning angles, ending on the
/// arc endpoints with legs tangent to the circle.
#[derive(Debug, Clone, Serialize)]
pub struct ArcPolygon {
    pub polygon: ControlPolygon,
    pub leg_length: f64,
    /// Turn between consecutive legs (radians).
    pub turn: f64,
    /// Signed arc angle from A to B.
    pub arc_angle: f64,
    /// False when the end tangents cannot be honored (degree 1 chords).
    pub tangent_conditions_met: bool,
    pub warning: Option<String>,
}

/// Degree-`n` Bézier polygon for the circular arc from `a` to `b` about
/// `center`. Leg directions start along the tangent at `a` and turn by
/// `Δ/(n-1)` per vertex; the common leg length closes the polygon on `b`.
pub fn bezier_arc_polygon(a: Point, b: Point, center: Point, n: usize) -> Result<ArcPolygon> {
    if n == 0 {
        return invalid("degree must be at least 1");
    }
    let dim = crate::geometry::common_dim(&[a, b, center])?;
    let u = (a - center).to_3d();
    let w = (b - center).to_3d();
    let (ru, rw) = (u.norm(), w.norm());
    if !(ru > 0.0) || (ru - rw).abs() > 1e-9 * ru.max(rw) {
        return invalid(format!("arc endpoints are not equidistant from the center ({ru} vs {rw})"));
    }
    let uw = u.cross(&w);
    let (axis, delta) = match dim {
        Dim::Two => (Point::new3(0.0, 0.0, 1.0), uw.z().atan2(u.dot(&w))),
        Dim::Three => match uw.normalized() {
            Some(ax) if uw.norm() > 1e-14 * ru * rw => (ax, uw.norm().atan2(u.dot(&w))),
            _ => {
                let helper = if u.x().abs() < 0.9 * ru { Point::new3(1.0, 0.0, 0.0) } else { Point::new3(0.0, 1.0, 0.0) };
                (u.cross(&helper).normalized().expect("nonzero"), uw.norm().atan2(u.dot(&w)))
            }
        },
    };
    let flatten = |p: Point| if dim == Dim::Two { Point::new2(p.x(), p.y()) } else { p };
    let bezier_knots = KnotVector::bezier(n, 0.0, 1.0)?;

    if n == 1 {
        let met = delta == 0.0;
        return Ok(ArcPolygon {
            polygon: ControlPolygon::clamped(vec![a, b], bezier_knots)?,
            leg_length: a.distance(&b),
            turn: 0.0,
            arc_angle: delta,
            tangent_conditions_met: met,
            warning: (!met).then(|| "degree 1 cannot match the end tangents; returning the chord".to_string()),
        });
    }

    // travel direction at A: counterclockwise about `axis` for positive Δ
    let tangent = axis.cross(&u).normalized().expect("nonzero radius") * delta.signum();
    let turn = delta / (n - 1) as f64;
    let dirs: Vec<Vector> = (0..n).map(|k| tangent.rotate_about(&axis, turn * k as f64)).collect();
    let sum = dirs.iter().fold(Point::zero(Dim::Three), |s, d| s + *d);
    let chord = b.to_3d() - a.to_3d();
    let leg = if chord.norm() == 0.0 { 0.0 } else { chord.norm() / sum.norm() };
    let mut vertices = Vec::with_capacity(n + 1);
    let mut cur = a.to_3d();
    vertices.push(a);
    for d in &dirs[..n - 1] {
        cur += *d * leg;
        vertices.push(flatten(cur));
    }
    vertices.push(b);
    Ok(ArcPolygon {
        polygon: ControlPolygon::clamped(vertices, bezier_knots)?,
        leg_length: leg,
        turn,
        arc_angle: delta,
        tangent_conditions_met: true,
        warning: None,
    })
}

/// A parametric curve with closed-form derivatives.
pub trait AnalyticCurve: Send + Sync {
    fn name(&self) -> &str;
    fn dim(&self) -> Dim;
    /// `[C(s), C'(s), C''(s), C'''(s)]`.
    fn jet(&self, s: f64) -> [Point; 4];

    fn point(&self, s: f64) -> Point {
        self.jet(s)[0]
    }

    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }
}

/// `(2 + s sin s, 2 + s cos s, s)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConicalSpiral;

impl AnalyticCurve for ConicalSpiral {
    fn name(&self) -> &str {
        "conical-spiral"
    }

    fn dim(&self) -> Dim {
        Dim::Three
    }

    fn jet(&self, s: f64) -> [Point; 4] {
        let (sn, cs) = s.sin_cos();
        [
            Point::new3(2.0 + s * sn, 2.0 + s * cs, s),
            Point::new3(sn + s * cs, cs - s * sn, 1.0),
            Point::new3(2.0 * cs - s * sn, -2.0 * sn - s * cs, 0.0),
            Point::new3(-3.0 * sn - s * cs, -3.0 * cs + s * sn, 0.0),
        ]
    }
}

pub fn conical_spiral() -> ConicalSpiral {
    ConicalSpiral
}

/// Circle parametrized by angle, counterclockwise.
#[derive(Debug, Clone, Copy)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl AnalyticCurve for Circle {
    fn name(&self) -> &str {
        "circle"
    }

    fn dim(&self) -> Dim {
        Dim::Two
    }

    fn jet(&self, s: f64) -> [Point; 4] {
        let (sn, cs) = s.sin_cos();
        let r = self.radius;
        let c = Point::new2(self.center.x(), self.center.y());
        [
            c + Point::new2(r * cs, r * sn),
            Point::new2(-r * sn, r * cs),
            Point::new2(-r * cs, -r * sn),
            Point::new2(r * sn, -r * cs),
        ]
    }
}

/// `origin + s * direction`.
#[derive(Debug, Clone, Copy)]
pub struct Line {
    pub origin: Point,
    pub direction: Vector,
}

impl AnalyticCurve for Line {
    fn name(&self) -> &str {
        "line"
    }

    fn dim(&self) -> Dim {
        self.origin.dim().max(self.direction.dim())
    }

    fn jet(&self, s: f64) -> [Point; 4] {
        let z = Point::zero(self.dim());
        [self.origin + self.direction * s, self.direction + z, z, z]
    }
}

pub const ANALYTIC_CURVE_NAMES: [&str; 3] = ["conical-spiral", "circle", "line"];

/// Named curves: the conical spiral, the unit circle at the origin and the
/// diagonal line through the origin.
pub fn analytic_curve_by_name(name: &str) -> Option<Box<dyn AnalyticCurve>> {
    match name {
        "conical-spiral" => Some(Box::new(ConicalSpiral)),
        "circle" => Some(Box::new(Circle { center: Point::new2(0.0, 0.0), radius: 1.0 })),
        "line" => Some(Box::new(Line { origin: Point::new2(0.0, 0.0), direction: Point::new2(1.0, 1.0) })),
        _ => None,
    }
}

/// Sample locations `s0 + k h`, `k = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingSpec {
    pub s0: f64,
    pub h: f64,
    pub count: usize,
}

impl SamplingSpec {
    pub fn validate(&self, degree: usize) -> Result<()> {
        if self.h == 0.0 || !self.h.is_finite() || !self.s0.is_finite() {
            return invalid(format!("sampling step must be finite and nonzero, got {}", self.h));
        }
        if self.count < degree + 1 {
            return invalid(format!("{} samples cannot carry a degree-{degree} polygon", self.count));
        }
        Ok(())
    }

    pub fn parameters(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|k| self.s0 + self.h * k as f64)
    }

    /// Analytic parameter matched to spline parameter `t`: vertex `k` sits
    /// at the Greville abscissa `k + (n+1)/2` of the uniform knot vector.
    pub fn analytic_parameter(&self, degree: usize, t: f64) -> f64 {
        self.s0 + self.h * (t - 0.5 * (degree + 1) as f64)
    }

    /// Inverse of `analytic_parameter`.
    pub fn spline_parameter(&self, degree: usize, s: f64) -> f64 {
        (s - self.s0) / self.h + 0.5 * (degree + 1) as f64
    }

    /// Analytic parameter range matching the spline domain `[n, count]`,
    /// ordered increasingly.
    pub fn shared_domain(&self, degree: usize) -> (f64, f64) {
        let a = self.analytic_parameter(degree, degree as f64);
        let b = self.analytic_parameter(degree, self.count as f64);
        (a.min(b), a.max(b))
    }
}

/// Float polygon with vertices `c(s0 + k h)`.
pub fn sample_analytic_to_polygon(curve: &dyn AnalyticCurve, spec: &SamplingSpec, degree: usize) -> Result<ControlPolygon> {
    spec.validate(degree)?;
    let (lo, hi) = curve.domain();
    let pts: Vec<Point> = spec.parameters().map(|s| curve.point(s)).collect();
    let last = spec.s0 + spec.h * (spec.count - 1) as f64;
    if spec.s0.min(last) < lo || spec.s0.max(last) > hi {
        return Err(Error::Domain { t: if spec.s0 < lo { spec.s0 } else { last }, start: lo, end: hi });
    }
    ControlPolygon::float(pts, degree)
}

/// Curvature profile of an analytic curve on `[a, b]`.
pub fn analytic_profile(curve: &dyn AnalyticCurve, a: f64, b: f64, sample_count: usize) -> Result<CurvatureProfile> {
    if !(b > a) {
        return invalid(format!("empty parameter range [{a}, {b}]"));
    }
    profile_from_jet(|s| Ok(curve.jet(s)), curve.dim(), a, b, sample_count, &[])
}
