//! Endpoint positioning of float polygons and composite curves.
//!
//! At the domain-start knot of a uniform B-spline of degree `n`, the curve
//! point and tangent depend only on the first `n` float vertices (and
//! symmetrically at the end). Moving those `n` vertices rigidly therefore
//! moves the end point and tangent by the same rigid motion, so one
//! correction is exact.

use serde::{Deserialize, Serialize};

use crate::convert::{extract_bezier_segments, to_clamped};
use crate::error::{invalid, Error, Result};
use crate::eval::{derivatives, EPS_REGULAR};
use crate::geometry::{curve_of, BSplineCurve, ControlPolygon, Dim, Point, Vector};
use crate::metrics::{harmonicity_report, HarmonicitySpec, Verdict};

/// Laplacian fairing strength.
pub const FAIRING_LAMBDA: f64 = 0.25;
pub const DEFAULT_TOL_ANGLE: f64 = 1e-9;
/// Position tolerance relative to the polygon diameter.
pub const DEFAULT_TOL_POS_REL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Start,
    End,
}

/// Desired end point and unit travel direction at one end of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndTarget {
    pub endpoint: Point,
    pub tangent_dir: Vector,
    pub which_end: End,
}

impl EndTarget {
    /// Normalizes `tangent`.
    pub fn new(endpoint: Point, tangent: Vector, which_end: End) -> Result<Self> {
        let Some(tangent_dir) = tangent.normalized() else {
            return invalid("target tangent must be nonzero");
        };
        if !endpoint.is_finite() {
            return invalid("target endpoint must be finite");
        }
        Ok(EndTarget { endpoint, tangent_dir, which_end })
    }

    pub fn validate(&self) -> Result<()> {
        if (self.tangent_dir.norm() - 1.0).abs() > 1e-12 {
            return invalid(format!("target tangent has length {}, expected 1", self.tangent_dir.norm()));
        }
        Ok(())
    }
}

/// Difference between the actual and target end configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EndMismatch {
    pub which_end: End,
    /// Actual endpoint to target endpoint.
    pub offset: Vector,
    /// Signed angle from actual to target tangent, in `(-π, π]`.
    pub angle: f64,
    /// Unit rotation axis for `angle` (+z for planar curves).
    pub axis: Vector,
    pub actual_endpoint: Point,
    pub actual_tangent: Vector,
}

impl EndMismatch {
    pub fn target_endpoint(&self) -> Point {
        self.actual_endpoint + self.offset
    }
}

/// Signed angle and axis rotating unit `a` onto unit `b`.
fn rotation_between(a: &Vector, b: &Vector, dim: Dim) -> (f64, Vector) {
    let z = Point::new3(0.0, 0.0, 1.0);
    let c = a.cross(b);
    match dim {
        Dim::Two => {
            let ang = c.z().atan2(a.dot(b));
            (if ang == -std::f64::consts::PI { std::f64::consts::PI } else { ang }, z)
        }
        Dim::Three => {
            let ang = c.norm().atan2(a.dot(b));
            let axis = c.normalized().filter(|_| c.norm() > 1e-300).unwrap_or_else(|| {
                let helper = if a.x().abs() < 0.9 { Point::new3(1.0, 0.0, 0.0) } else { Point::new3(0.0, 1.0, 0.0) };
                a.to_3d().cross(&helper).normalized().expect("nonzero")
            });
            (ang, axis)
        }
    }
}

pub fn measure_end_mismatch(polygon: &ControlPolygon, target: &EndTarget) -> Result<EndMismatch> {
    if !polygon.is_float() {
        return invalid("end positioning works on float polygons");
    }
    target.validate()?;
    let dim = polygon.dim();
    if target.endpoint.dim() != dim || target.tangent_dir.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim.count(), found: target.endpoint.dim().max(target.tangent_dir.dim()).count() });
    }
    let (clamped, _) = to_clamped(polygon)?;
    let v = clamped.vertices();
    let (endpoint, leg, t) = match target.which_end {
        End::Start => (v[0], v[1] - v[0], polygon.degree() as f64),
        End::End => (v[v.len() - 1], v[v.len() - 1] - v[v.len() - 2], polygon.len() as f64),
    };
    let speed = leg.norm();
    if speed < EPS_REGULAR * polygon.diameter().max(f64::MIN_POSITIVE) {
        return Err(Error::Regularity { t, speed });
    }
    let actual_tangent = leg / speed;
    let (angle, axis) = rotation_between(&actual_tangent, &target.tangent_dir, dim);
    Ok(EndMismatch {
        which_end: target.which_end,
        offset: target.endpoint - endpoint,
        angle,
        axis,
        actual_endpoint: endpoint,
        actual_tangent,
    })
}

/// Rotation of `p` about the line through `pivot` along `axis`.
fn rotate_around(p: Point, pivot: Point, axis: &Vector, angle: f64) -> Point {
    let r = (p - pivot).rotate_about(axis, angle);
    let q = pivot + r;
    match p.dim() {
        Dim::Two => Point::new2(q.x(), q.y()),
        Dim::Three => q,
    }
}

/// Translates the `m_count` terminal vertices at `mismatch.which_end` by
/// the offset, then rotates them about the target endpoint by the angle.
pub fn apply_end_correction(polygon: &ControlPolygon, mismatch: &EndMismatch, m_count: usize) -> Result<ControlPolygon> {
    apply_scaled_correction(polygon, mismatch, m_count, 1.0)
}

fn apply_scaled_correction(polygon: &ControlPolygon, m: &EndMismatch, m_count: usize, damping: f64) -> Result<ControlPolygon> {
    let n = polygon.len();
    if m_count == 0 || m_count > n {
        return invalid(format!("cannot move {m_count} of {n} vertices"));
    }
    let offset = m.offset * damping;
    let angle = m.angle * damping;
    let pivot = m.actual_endpoint + offset;
    let mut v = polygon.vertices().to_vec();
    let range = match m.which_end {
        End::Start => 0..m_count,
        End::End => n - m_count..n,
    };
    for p in &mut v[range] {
        *p = rotate_around(*p + offset, pivot, &m.axis, angle);
    }
    polygon.with_vertices(v)
}

/// One Jacobi pass of Laplacian smoothing on indices `degree..count-degree`.
pub fn fair_interior(polygon: &ControlPolygon, lambda: f64) -> Result<ControlPolygon> {
    let n = polygon.degree();
    let old = polygon.vertices();
    let mut v = old.to_vec();
    for i in n.max(1)..old.len().saturating_sub(n).min(old.len() - 1) {
        let mid = (old[i - 1] + old[i + 1]) * 0.5;
        v[i] = old[i] + (mid - old[i]) * lambda;
    }
    polygon.with_vertices(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositioningOptions {
    pub spec: HarmonicitySpec,
    /// Absolute; `None` means `1e-9 * diameter`.
    pub tol_pos: Option<f64>,
    pub tol_ang: f64,
    pub max_iter: usize,
    pub fair: bool,
    /// Fraction of each correction applied, in `(0, 1]`.
    pub damping: f64,
    /// Vertices moved per end; `None` means the degree.
    pub m_count: Option<usize>,
}

impl Default for PositioningOptions {
    fn default() -> Self {
        PositioningOptions {
            spec: HarmonicitySpec::default(),
            tol_pos: None,
            tol_ang: DEFAULT_TOL_ANGLE,
            max_iter: DEFAULT_MAX_ITER,
            fair: true,
            damping: 1.0,
            m_count: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EndResidual {
    pub which_end: End,
    pub offset: f64,
    pub angle: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PositioningReport {
    pub iterations: usize,
    pub converged: bool,
    pub tol_pos: f64,
    pub tol_ang: f64,
    pub ends: Vec<EndResidual>,
    pub harmonicity: Verdict,
}

fn residuals(polygon: &ControlPolygon, targets: &[EndTarget]) -> Result<(Vec<EndMismatch>, Vec<EndResidual>)> {
    let ms: Vec<EndMismatch> = targets.iter().map(|t| measure_end_mismatch(polygon, t)).collect::<Result<_>>()?;
    let rs = ms
        .iter()
        .map(|m| EndResidual { which_end: m.which_end, offset: m.offset.norm(), angle: m.angle.abs() })
        .collect();
    Ok((ms, rs))
}

/// Alternates exact end corrections with optional interior fairing until
/// both ends are within tolerance and the polygon passes `spec`. On
/// failure the best iterate is returned with `converged = false`.
pub fn position_endpoints(
    polygon: &ControlPolygon,
    targets: &[EndTarget],
    opts: &PositioningOptions,
) -> Result<(ControlPolygon, PositioningReport)> {
    if targets.len() > 2 {
        return invalid("at most one target per end");
    }
    if targets.len() == 2 && targets[0].which_end == targets[1].which_end {
        return invalid("two targets for the same end");
    }
    let m_count = opts.m_count.unwrap_or(polygon.degree());
    if targets.len() == 2 && 2 * m_count > polygon.len() {
        return invalid(format!(
            "end blocks of {m_count} vertices overlap on a polygon of {} vertices",
            polygon.len()
        ));
    }
    if !(opts.damping > 0.0 && opts.damping <= 1.0) {
        return invalid(format!("damping must lie in (0, 1], got {}", opts.damping));
    }
    opts.spec.validate()?;
    let tol_pos = opts.tol_pos.unwrap_or(DEFAULT_TOL_POS_REL * polygon.diameter());
    let tol_ang = opts.tol_ang;

    let within = |rs: &[EndResidual]| rs.iter().all(|r| r.offset <= tol_pos && r.angle <= tol_ang);
    let score = |rs: &[EndResidual]| {
        rs.iter().map(|r| (r.offset / tol_pos.max(f64::MIN_POSITIVE)).max(r.angle / tol_ang)).fold(0.0, f64::max)
    };
    // iterates rank by (ends within tolerance and harmonious) > (ends within
    // tolerance) > smaller residual; ties within a rank keep the later one
    let rank = |rs: &[EndResidual], v: &Verdict| match (within(rs), v.pass) {
        (true, true) => 2,
        (true, false) => 1,
        _ => 0,
    };
    let evaluate = |p: &ControlPolygon| -> Result<(Vec<EndMismatch>, Vec<EndResidual>, Verdict)> {
        let (ms, rs) = residuals(p, targets)?;
        let verdict = harmonicity_report(p, &opts.spec)?.verdict;
        Ok((ms, rs, verdict))
    };

    let mut current = polygon.clone();
    let (mut ms, mut rs, mut verdict) = evaluate(&current)?;
    let mut best = (current.clone(), rs.clone(), verdict.clone());
    let mut iterations = 0;
    while rank(&rs, &verdict) < 2 && iterations < opts.max_iter {
        iterations += 1;
        for m in &ms {
            current = apply_scaled_correction(&current, m, m_count, opts.damping)?;
        }
        if opts.fair {
            current = fair_interior(&current, FAIRING_LAMBDA)?;
        }
        (ms, rs, verdict) = evaluate(&current)?;
        let (r_new, r_best) = (rank(&rs, &verdict), rank(&best.1, &best.2));
        if r_new > r_best || (r_new == r_best && (r_new > 0 || score(&rs) < score(&best.1))) {
            best = (current.clone(), rs.clone(), verdict.clone());
        }
    }
    let converged = rank(&rs, &verdict) == 2;
    let (result, ends, harmonicity) = if converged { (current, rs, verdict) } else { best };
    Ok((
        result,
        PositioningReport { iterations, converged, tol_pos, tol_ang, ends, harmonicity },
    ))
}

/// Concatenation `a ++ bridge ++ b` as one float polygon.
pub fn join_float_polygons(a: &ControlPolygon, b: &ControlPolygon, bridge: &[Point]) -> Result<ControlPolygon> {
    if !a.is_float() || !b.is_float() {
        return invalid("join needs float polygons");
    }
    if a.degree() != b.degree() {
        return invalid(format!("degree mismatch: {} vs {}", a.degree(), b.degree()));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim().count(), found: b.dim().count() });
    }
    if let Some(p) = bridge.iter().find(|p| p.dim() != a.dim()) {
        return Err(Error::DimensionMismatch { expected: a.dim().count(), found: p.dim().count() });
    }
    let mut v = a.vertices().to_vec();
    v.extend_from_slice(bridge);
    v.extend_from_slice(b.vertices());
    ControlPolygon::float(v, a.degree())
}

/// Heuristic bridge of `count` points: a cubic Hermite blend from the last
/// leg of `a` into the first leg of `b`, sampled uniformly in arc length.
pub fn default_bridge(a: &ControlPolygon, b: &ControlPolygon, count: usize) -> Result<Vec<Point>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let (va, vb) = (a.vertices(), b.vertices());
    if va.len() < 2 || vb.len() < 2 {
        return invalid("bridge needs polygons with at least one leg");
    }
    let p0 = va[va.len() - 1];
    let p1 = vb[0];
    let la = va[va.len() - 1] - va[va.len() - 2];
    let lb = vb[1] - vb[0];
    let chord = p1.distance(&p0);
    // tangent magnitudes follow the mean adjacent leg
    let span = chord.max(0.5 * (la.norm() + lb.norm()));
    let ta = la.normalized().map(|d| d * span).unwrap_or(p1 - p0);
    let tb = lb.normalized().map(|d| d * span).unwrap_or(p1 - p0);
    let hermite = |u: f64| {
        let (u2, u3) = (u * u, u * u * u);
        p0 * (2.0 * u3 - 3.0 * u2 + 1.0) + ta * (u3 - 2.0 * u2 + u) + p1 * (-2.0 * u3 + 3.0 * u2) + tb * (u3 - u2)
    };
    const DENSE: usize = 512;
    let pts: Vec<Point> = (0..=DENSE).map(|i| hermite(i as f64 / DENSE as f64)).collect();
    let mut cum = vec![0.0; DENSE + 1];
    for i in 1..=DENSE {
        cum[i] = cum[i - 1] + pts[i].distance(&pts[i - 1]);
    }
    let total = cum[DENSE];
    if !(total > 0.0) {
        return Ok(vec![p0; count]);
    }
    // include the end legs so bridge spacing continues the polygons
    let (ea, eb) = (la.norm(), lb.norm());
    let whole = ea + total + eb;
    let out = (1..=count)
        .map(|k| {
            let target = (k as f64 / (count + 1) as f64 * whole - ea).clamp(0.0, total);
            let j = cum.partition_point(|&c| c < target).clamp(1, DENSE);
            let seg = cum[j] - cum[j - 1];
            let a = if seg > 0.0 { (target - cum[j - 1]) / seg } else { 0.0 };
            pts[j - 1].lerp(&pts[j], a)
        })
        .collect();
    Ok(out)
}

/// Relative jumps of derivatives of orders `1..=max_order` across the knot
/// `t0`, from the exact derivatives of the two adjacent Bézier segments.
/// A jump between negligible derivatives (below `1e-12` of the polygon
/// scale) reports zero.
pub fn junction_smoothness_check(curve: &BSplineCurve, t0: f64, max_order: usize) -> Result<Vec<f64>> {
    let n = curve.degree();
    if max_order == 0 || max_order > n {
        return invalid(format!("order must lie in 1..={n}, got {max_order}"));
    }
    let (a, b) = curve.domain();
    if !(t0 > a && t0 < b) || curve.knots().multiplicity(t0) == 0 {
        return invalid(format!("{t0} is not an interior knot"));
    }
    let segs = extract_bezier_segments(curve)?;
    let left = segs
        .iter()
        .find(|s| s.knots().domain().1 == t0)
        .ok_or_else(|| Error::InvalidArgument(format!("no segment ends at {t0}")))?;
    let right = segs
        .iter()
        .find(|s| s.knots().domain().0 == t0)
        .ok_or_else(|| Error::InvalidArgument(format!("no segment starts at {t0}")))?;
    let (lc, rc) = (curve_of(left), curve_of(right));
    let dl = derivatives(&lc, t0, max_order)?;
    let dr = derivatives(&rc, t0, max_order)?;
    let (la, lb) = lc.domain();
    let (ra, rb) = rc.domain();
    let h = (lb - la).min(rb - ra);
    let size = crate::geometry::diameter(curve.points()).max(f64::MIN_POSITIVE);
    Ok((1..=max_order)
        .map(|r| {
            let (l, rr) = (dl[r - 1], dr[r - 1]);
            let scale = l.norm().max(rr.norm());
            let floor = 1e-12 * size / h.powi(r as i32);
            if scale <= floor {
                0.0
            } else {
                (l - rr).norm() / scale
            }
        })
        .collect())
}
