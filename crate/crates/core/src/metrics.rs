//! Discrete geometry of control polygons and shape comparison of sampled
//! curvature functions.
//!
//! Discrete curvature uses central divided differences of the vertices:
//! `t_i = (S_{i+1} - S_{i-1}) / 2`, `c_i = S_{i+1} - 2 S_i + S_{i-1}` and
//! `κ̂_i = |t_i × c_i| / |t_i|^3`; torsion adds the antisymmetric five-point
//! third difference.
//!
//! Level-n curvature applies the graph-curvature operator
//! `K[f] = f'' / (1 + f'^2)^{3/2}` repeatedly to κ(s) (or τ(s)), with
//! derivatives taken with respect to the arc length `s` of the curve.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::eval::{CurvatureProfile, EPS_REGULAR};
use crate::geometry::{ControlPolygon, Dim, Point, Vector};

/// Relative plateau tolerance when splitting κ̂ into monotone runs.
pub const PLATEAU_TOL: f64 = 1e-12;
/// Default relative amplitude below which signature events are ignored.
pub const DEFAULT_NOISE_FLOOR: f64 = 1e-6;

/// Divided differences at one interior vertex.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VertexDifferences {
    pub index: usize,
    pub first: Vector,
    pub second: Vector,
    /// Antisymmetric third difference; needs two neighbors on each side.
    pub third: Option<Vector>,
    /// `None` when `|t_i|` is below the regularity threshold.
    pub curvature: Option<f64>,
    /// Only for 3D polygons with a defined third difference and nonzero
    /// `t_i × c_i`.
    pub torsion: Option<f64>,
}

impl VertexDifferences {
    pub fn is_degenerate(&self) -> bool {
        self.curvature.is_none()
    }

    /// `t_i × c_i`, the unnormalized binormal.
    pub fn binormal(&self) -> Vector {
        self.first.cross(&self.second)
    }
}

/// Divided differences of a polygon at vertices `1..N-1`.
#[derive(Debug, Clone, Serialize)]
pub struct DiscreteGeometry {
    pub dim: Dim,
    pub vertices: Vec<VertexDifferences>,
}

impl DiscreteGeometry {
    /// κ̂ in vertex order; degenerate vertices are `None`.
    pub fn curvatures(&self) -> Vec<Option<f64>> {
        self.vertices.iter().map(|v| v.curvature).collect()
    }
}

pub fn discrete_geometry(polygon: &ControlPolygon) -> Result<DiscreteGeometry> {
    discrete_geometry_of(polygon.vertices())
}

/// Divided differences of an arbitrary vertex sequence.
pub fn discrete_geometry_of(s: &[Point]) -> Result<DiscreteGeometry> {
    if s.len() < 3 {
        return invalid(format!("discrete geometry needs at least 3 vertices, got {}", s.len()));
    }
    let dim = crate::geometry::common_dim(s)?;
    let n = s.len();
    let vertices = (1..n - 1)
        .map(|i| {
            let first = (s[i + 1] - s[i - 1]) * 0.5;
            let second = s[i + 1] - s[i] * 2.0 + s[i - 1];
            let third = (i >= 2 && i + 2 < n).then(|| (s[i + 2] - s[i + 1] * 2.0 + s[i - 1] * 2.0 - s[i - 2]) * 0.5);
            let tn = first.norm();
            let b = first.cross(&second);
            let curvature = (tn >= EPS_REGULAR).then(|| b.norm() / (tn * tn * tn));
            let bn2 = b.norm_squared();
            let torsion = match (dim, third) {
                (Dim::Three, Some(d)) if curvature.is_some() && bn2 > 0.0 => Some(b.dot(&d) / bn2),
                _ => None,
            };
            VertexDifferences { index: i, first, second, third, curvature, torsion }
        })
        .collect();
    Ok(DiscreteGeometry { dim, vertices })
}

/// Bounds that make a polygon count as harmonious and regular.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicitySpec {
    pub max_curvature_sign_changes: usize,
    pub max_monotone_runs: usize,
    pub min_leg_length: f64,
    /// Largest allowed turning angle between consecutive legs (radians).
    pub max_turning_angle: f64,
}

impl HarmonicitySpec {
    /// One monotone κ̂ run, no bending reversals, no zero legs, turns below
    /// 90°.
    pub fn monotone() -> Self {
        HarmonicitySpec {
            max_curvature_sign_changes: 0,
            max_monotone_runs: 1,
            min_leg_length: EPS_REGULAR,
            max_turning_angle: std::f64::consts::FRAC_PI_2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min_leg_length >= 0.0) || !(self.max_turning_angle >= 0.0) {
            return invalid("harmonicity bounds must be nonnegative");
        }
        Ok(())
    }
}

impl Default for HarmonicitySpec {
    fn default() -> Self {
        HarmonicitySpec::monotone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunDirection {
    Increasing,
    Decreasing,
    Constant,
}

/// Maximal monotone stretch of κ̂ over vertex indices `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonotoneRun {
    pub start: usize,
    pub end: usize,
    pub direction: RunDirection,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarmonicityReport {
    pub leg_lengths: Vec<f64>,
    pub turning_angles: Vec<f64>,
    /// Dihedral angles between consecutive osculating planes (3D only).
    pub torsion_angles: Option<Vec<f64>>,
    /// κ̂ at vertices `1..N-1`; `None` marks degenerate vertices.
    pub discrete_curvatures: Vec<Option<f64>>,
    pub monotone_runs: Vec<MonotoneRun>,
    /// Reversals of the bending direction (sign of `t_i × c_i`).
    pub sign_changes: usize,
    pub verdict: Verdict,
}

fn angle_between(a: &Vector, b: &Vector) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Splits a sequence of `(index, value)` into maximal monotone runs. Steps
/// within `PLATEAU_TOL` (relative) count as flat and never break a run.
pub fn monotone_runs(values: &[(usize, f64)]) -> Vec<MonotoneRun> {
    let mut runs = Vec::new();
    let Some(&(first, _)) = values.first() else {
        return runs;
    };
    let mut start = first;
    let mut dir = RunDirection::Constant;
    for w in values.windows(2) {
        let (i0, v0) = w[0];
        let (i1, v1) = w[1];
        let scale = v0.abs().max(v1.abs());
        let d = v1 - v0;
        let step = if d.abs() <= PLATEAU_TOL * scale {
            RunDirection::Constant
        } else if d > 0.0 {
            RunDirection::Increasing
        } else {
            RunDirection::Decreasing
        };
        match (dir, step) {
            (_, RunDirection::Constant) => {}
            (RunDirection::Constant, s) => dir = s,
            (cur, s) if cur == s => {}
            (cur, s) => {
                runs.push(MonotoneRun { start, end: i0, direction: cur });
                start = i1;
                dir = s;
            }
        }
    }
    let end = values.last().map(|v| v.0).unwrap_or(first);
    runs.push(MonotoneRun { start, end, direction: dir });
    runs
}

pub fn harmonicity_report(polygon: &ControlPolygon, spec: &HarmonicitySpec) -> Result<HarmonicityReport> {
    spec.validate()?;
    let v = polygon.vertices();
    let geo = discrete_geometry_of(v)?;
    let legs: Vec<Vector> = v.windows(2).map(|w| w[1] - w[0]).collect();
    let leg_lengths: Vec<f64> = legs.iter().map(|l| l.norm()).collect();
    let turning_angles: Vec<f64> = legs.windows(2).map(|w| angle_between(&w[0], &w[1])).collect();
    let torsion_angles = (geo.dim == Dim::Three).then(|| {
        let normals: Vec<Vector> = legs.windows(2).map(|w| w[0].cross(&w[1])).collect();
        normals.windows(2).map(|w| angle_between(&w[0], &w[1])).collect()
    });

    let valued: Vec<(usize, f64)> = geo.vertices.iter().filter_map(|d| d.curvature.map(|k| (d.index, k))).collect();
    let runs = monotone_runs(&valued);

    // bending direction sign changes, ignoring (near) straight vertices
    let mut sign_changes = 0;
    let mut prev: Option<Vector> = None;
    for d in geo.vertices.iter().filter(|d| !d.is_degenerate()) {
        let b = d.binormal();
        if b.norm() <= 1e-12 * d.first.norm_squared() {
            continue;
        }
        if let Some(p) = prev {
            if p.dot(&b) < 0.0 {
                sign_changes += 1;
            }
        }
        prev = Some(b);
    }

    let mut reasons = Vec::new();
    if sign_changes > spec.max_curvature_sign_changes {
        reasons.push(format!(
            "{sign_changes} curvature sign changes exceed the limit {}",
            spec.max_curvature_sign_changes
        ));
    }
    if runs.len() > spec.max_monotone_runs {
        reasons.push(format!("{} monotone runs exceed the limit {}", runs.len(), spec.max_monotone_runs));
    }
    for (i, &l) in leg_lengths.iter().enumerate() {
        if l < spec.min_leg_length {
            reasons.push(format!("leg {i} has degenerate length {l:e}"));
        }
    }
    if let Some((i, a)) = turning_angles
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > spec.max_turning_angle)
        .max_by(|x, y| x.1.total_cmp(y.1))
    {
        reasons.push(format!("turning angle {a} at vertex {} exceeds {}", i + 1, spec.max_turning_angle));
    }
    let degenerate: Vec<usize> = geo.vertices.iter().filter(|d| d.is_degenerate()).map(|d| d.index).collect();
    if !degenerate.is_empty() {
        reasons.push(format!("degenerate vertices {degenerate:?}"));
    }

    Ok(HarmonicityReport {
        leg_lengths,
        turning_angles,
        torsion_angles,
        discrete_curvatures: geo.curvatures(),
        monotone_runs: runs,
        sign_changes,
        verdict: Verdict { pass: reasons.is_empty(), reasons },
    })
}

/// A function sampled on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledFunction {
    pub s: Vec<f64>,
    pub f: Vec<f64>,
    /// Samples whose value depends on one-sided difference stencils.
    pub low_confidence: Vec<bool>,
}

impl SampledFunction {
    pub fn new(s: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        if s.len() != f.len() {
            return invalid("grid and values differ in length");
        }
        if s.windows(2).any(|w| !(w[1] > w[0])) {
            return invalid("sample locations must be strictly increasing");
        }
        let n = s.len();
        Ok(SampledFunction { s, f, low_confidence: vec![false; n] })
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// The samples not flagged as low confidence.
    pub fn confident(&self) -> SampledFunction {
        let (mut s, mut f) = (Vec::new(), Vec::new());
        for i in 0..self.len() {
            if !self.low_confidence[i] {
                s.push(self.s[i]);
                f.push(self.f[i]);
            }
        }
        let n = s.len();
        SampledFunction { s, f, low_confidence: vec![false; n] }
    }

    pub fn max_abs(&self) -> f64 {
        self.f.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Graph curvature `K[f](s) = f'' / (1 + f'^2)^{3/2}` with three-point
/// nonuniform differences; the two end samples use one-sided stencils and
/// are flagged low confidence.
pub fn graph_curvature(func: &SampledFunction) -> Result<SampledFunction> {
    let n = func.len();
    if n < 5 {
        return invalid(format!("graph curvature needs at least 5 samples, got {n}"));
    }
    let (s, f) = (&func.s, &func.f);
    let mut out = Vec::with_capacity(n);
    let mut flags = Vec::with_capacity(n);
    for i in 0..n {
        // quadratic through three neighbouring samples, differentiated at s_i
        let c = i.clamp(1, n - 2);
        let (x0, x1, x2) = (s[c - 1], s[c], s[c + 1]);
        let (y0, y1, y2) = (f[c - 1], f[c], f[c + 1]);
        let h0 = x1 - x0;
        let h1 = x2 - x1;
        let d0 = (y1 - y0) / h0;
        let d1 = (y2 - y1) / h1;
        let second = 2.0 * (d1 - d0) / (h0 + h1);
        let slope_mid = (h1 * d0 + h0 * d1) / (h0 + h1);
        let first = slope_mid + second * (s[i] - x1);
        out.push(second / (1.0 + first * first).powf(1.5));
        let inherited = func.low_confidence[c - 1] || func.low_confidence[c] || func.low_confidence[c + 1];
        flags.push(i != c || inherited);
    }
    Ok(SampledFunction { s: s.clone(), f: out, low_confidence: flags })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvatureSource {
    Curvature,
    Torsion,
}

/// κ^(n)(s) or κ_τ^(n)(s) from a curvature profile.
pub fn level_curvature(profile: &CurvatureProfile, source: CurvatureSource, level: usize) -> Result<SampledFunction> {
    if level == 0 {
        return invalid("level must be at least 1");
    }
    let values = match source {
        CurvatureSource::Curvature => profile.curvature(),
        CurvatureSource::Torsion => match (profile.dim, profile.torsion()) {
            (Dim::Three, Some(t)) => t,
            _ => return Err(Error::DimensionMismatch { expected: 3, found: profile.dim.count() }),
        },
    };
    let mut f = SampledFunction::new(profile.arc_length(), values)?;
    for _ in 1..level {
        f = graph_curvature(&f)?;
    }
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Max,
    Min,
    Inflection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeEvent {
    pub kind: EventKind,
    pub s: f64,
}

/// Ordered extrema and inflections of a sampled function.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ShapeSignature {
    pub events: Vec<ShapeEvent>,
}

impl ShapeSignature {
    pub fn kinds(&self) -> Vec<EventKind> {
        self.events.iter().map(|e| e.kind).collect()
    }

    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    pub fn extrema(&self) -> usize {
        self.count(EventKind::Max) + self.count(EventKind::Min)
    }
}

/// Turning points of `g` that survive a reversal larger than `threshold`.
/// Returns `(index, is_max)`.
fn confirmed_turns(g: &[f64], threshold: f64) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    if g.is_empty() {
        return out;
    }
    let g0 = g[0];
    let (mut hi, mut hi_i, mut lo, mut lo_i) = (g0, 0, g0, 0);
    // 0: undecided, 1: rising (tracking a max), -1: falling
    let mut dir = 0i8;
    for (i, &v) in g.iter().enumerate().skip(1) {
        match dir {
            0 => {
                if v > hi {
                    hi = v;
                    hi_i = i;
                }
                if v < lo {
                    lo = v;
                    lo_i = i;
                }
                if hi - lo > threshold {
                    if hi_i > lo_i {
                        if lo_i > 0 && g0 - lo > threshold {
                            out.push((lo_i, false));
                        }
                        dir = 1;
                    } else {
                        if hi_i > 0 && hi - g0 > threshold {
                            out.push((hi_i, true));
                        }
                        dir = -1;
                    }
                }
            }
            1 => {
                if v > hi {
                    hi = v;
                    hi_i = i;
                } else if hi - v > threshold {
                    out.push((hi_i, true));
                    dir = -1;
                    lo = v;
                    lo_i = i;
                }
            }
            _ => {
                if v < lo {
                    lo = v;
                    lo_i = i;
                } else if v - lo > threshold {
                    out.push((lo_i, false));
                    dir = 1;
                    hi = v;
                    hi_i = i;
                }
            }
        }
    }
    out
}

/// Vertex of the parabola through three samples, clamped to their span.
fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> f64 {
    let d0 = (y[1] - y[0]) / (x[1] - x[0]);
    let d1 = (y[2] - y[1]) / (x[2] - x[1]);
    let a = (d1 - d0) / (x[2] - x[0]);
    if a == 0.0 || !a.is_finite() {
        return x[1];
    }
    // y' = d0 + a (2 s - x0 - x1) = 0
    let v = 0.5 * (x[0] + x[1] - d0 / a);
    v.clamp(x[0], x[2])
}

fn locate(xs: &[f64], ys: &[f64], i: usize) -> f64 {
    if i == 0 || i + 1 >= xs.len() {
        return xs[i];
    }
    parabola_vertex([xs[i - 1], xs[i], xs[i + 1]], [ys[i - 1], ys[i], ys[i + 1]])
}

/// Extrema (turns of `f`) and inflections (turns of the slope of `f`).
/// An event counts only when the reversal exceeds `noise_floor` times the
/// range of the sequence it was found in. Low-confidence samples are
/// dropped first.
pub fn shape_signature(func: &SampledFunction, noise_floor: f64) -> Result<ShapeSignature> {
    let func = func.confident();
    let n = func.len();
    if n < 7 {
        return invalid(format!("shape signature needs at least 7 samples, got {n}"));
    }
    let (s, f) = (&func.s, &func.f);
    let range = |v: &[f64]| {
        let (lo, hi) = v.iter().fold((f64::MAX, f64::MIN), |(l, h), &x| (l.min(x), h.max(x)));
        hi - lo
    };

    let mut events = Vec::new();
    let fr = range(f);
    if fr > 0.0 {
        for (i, is_max) in confirmed_turns(f, noise_floor * fr) {
            let kind = if is_max { EventKind::Max } else { EventKind::Min };
            events.push(ShapeEvent { kind, s: locate(s, f, i) });
        }
    }

    let mids: Vec<f64> = s.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let slopes: Vec<f64> = s.windows(2).zip(f.windows(2)).map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0])).collect();
    let sr = range(&slopes);
    if sr > 0.0 {
        for (i, _) in confirmed_turns(&slopes, noise_floor * sr) {
            events.push(ShapeEvent { kind: EventKind::Inflection, s: locate(&mids, &slopes, i) });
        }
    }

    events.sort_by(|a, b| a.s.total_cmp(&b.s));
    for i in 1..events.len() {
        if events[i].s <= events[i - 1].s {
            events[i].s = next_up(events[i - 1].s);
        }
    }
    Ok(ShapeSignature { events })
}

fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    f64::from_bits(if x > 0.0 { bits + 1 } else { bits - 1 })
}

/// Same number and order of extrema and inflections; locations ignored.
pub fn shape_equivalent(a: &ShapeSignature, b: &ShapeSignature) -> bool {
    a.kinds() == b.kinds()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_float_polygon, regular_polygon_vertices, Orientation};

    fn sampled(range: (f64, f64), n: usize, f: impl Fn(f64) -> f64) -> SampledFunction {
        let s: Vec<f64> = (0..n).map(|i| range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64).collect();
        let v = s.iter().map(|&x| f(x)).collect();
        SampledFunction::new(s, v).unwrap()
    }

    #[test]
    fn collinear_vertices_have_zero_curvature() {
        let pts: Vec<Point> = (0..8).map(|i| Point::new2(1.0 + 2.0 * i as f64, -(i as f64))).collect();
        let g = discrete_geometry_of(&pts).unwrap();
        assert_eq!(g.vertices.len(), 6);
        assert!(g.vertices.iter().all(|v| v.curvature == Some(0.0)));
    }

    #[test]
    fn regular_polygon_has_equal_curvatures() {
        let pts = regular_polygon_vertices(12, 10.0, 0.4, Orientation::Ccw).unwrap();
        let k: Vec<f64> = discrete_geometry_of(&pts).unwrap().curvatures().into_iter().map(Option::unwrap).collect();
        for v in &k {
            assert!((v - k[0]).abs() < 1e-14 * k[0]);
        }
    }

    #[test]
    fn mineur_farin_five_points_decreasing() {
        let pts = [(0., 0.), (1., 0.), (1., 2.), (-3., 2.), (-3., -6.)].map(|(x, y)| Point::new2(x, y));
        let k: Vec<f64> = discrete_geometry_of(&pts).unwrap().curvatures().into_iter().map(Option::unwrap).collect();
        // t_1 = (0.5, 1), c_1 = (-1, 2): |t x c| = 2, |t|^3 = 1.25^1.5
        assert!((k[0] - 2.0 / 1.25f64.powf(1.5)).abs() < 1e-14);
        assert!(k[0] > k[1] && k[1] > k[2], "{k:?}");
    }

    #[test]
    fn helix_torsion_sign() {
        let pts: Vec<Point> = (0..10)
            .map(|i| {
                let a = 0.4 * i as f64;
                Point::new3(a.cos(), a.sin(), 0.2 * a)
            })
            .collect();
        let g = discrete_geometry_of(&pts).unwrap();
        let tau: Vec<f64> = g.vertices.iter().filter_map(|v| v.torsion).collect();
        assert_eq!(tau.len(), 6);
        assert!(tau.iter().all(|&t| t > 0.0));
        assert!(tau.iter().all(|&t| (t - tau[0]).abs() < 1e-12));
    }

    #[test]
    fn harmonicity_of_regular_polygon() {
        let pts = regular_polygon_vertices(12, 10.0, 0.0, Orientation::Ccw).unwrap();
        let poly = make_float_polygon(pts, 9).unwrap();
        let r = harmonicity_report(&poly, &HarmonicitySpec::monotone()).unwrap();
        assert!(r.verdict.pass, "{:?}", r.verdict);
        assert_eq!(r.monotone_runs.len(), 1);
        assert_eq!(r.monotone_runs[0].direction, RunDirection::Constant);
        assert_eq!(r.sign_changes, 0);
    }

    #[test]
    fn harmonicity_of_mineur_farin() {
        let pts = [(0., 0.), (1., 0.), (1., 2.), (-3., 2.), (-3., -6.)].map(|(x, y)| Point::new2(x, y));
        let poly = make_float_polygon(pts.to_vec(), 4).unwrap();
        let spec = HarmonicitySpec { max_turning_angle: std::f64::consts::PI, ..HarmonicitySpec::monotone() };
        let r = harmonicity_report(&poly, &spec).unwrap();
        assert!(r.verdict.pass, "{:?}", r.verdict);
        assert_eq!(r.monotone_runs[0].direction, RunDirection::Decreasing);
    }

    #[test]
    fn zigzag_fails_harmonicity() {
        let pts: Vec<Point> = (0..9).map(|i| Point::new2(i as f64, if i % 2 == 0 { 0.0 } else { 0.3 })).collect();
        let poly = make_float_polygon(pts, 3).unwrap();
        let r = harmonicity_report(&poly, &HarmonicitySpec::monotone()).unwrap();
        assert!(!r.verdict.pass);
        assert_eq!(r.sign_changes, 6);
    }

    #[test]
    fn degenerate_leg_fails() {
        let pts = vec![Point::new2(0., 0.), Point::new2(1., 0.), Point::new2(1., 0.), Point::new2(2., 1.)];
        let poly = make_float_polygon(pts, 2).unwrap();
        let r = harmonicity_report(&poly, &HarmonicitySpec::monotone()).unwrap();
        assert!(!r.verdict.pass);
        assert!(r.verdict.reasons.iter().any(|m| m.contains("leg 1")));
    }

    #[test]
    fn runs_partition_indices() {
        let v = [(1, 1.0), (2, 2.0), (3, 3.0), (4, 2.0), (5, 2.0), (6, 1.0), (7, 4.0)];
        let runs = monotone_runs(&v);
        assert_eq!(
            runs,
            vec![
                MonotoneRun { start: 1, end: 3, direction: RunDirection::Increasing },
                MonotoneRun { start: 4, end: 6, direction: RunDirection::Decreasing },
                MonotoneRun { start: 7, end: 7, direction: RunDirection::Increasing },
            ]
        );
    }

    #[test]
    fn graph_curvature_of_lines_vanishes() {
        for f in [sampled((0.0, 3.0), 40, |_| 2.5), sampled((0.0, 3.0), 40, |s| -1.7 * s + 0.2)] {
            let k = graph_curvature(&f).unwrap();
            assert!(k.f.iter().all(|v| v.abs() < 1e-12), "{:?}", k.f);
            assert!(k.low_confidence[0] && k.low_confidence[39]);
            assert!(!k.low_confidence[1]);
        }
    }

    #[test]
    fn graph_curvature_of_semicircle() {
        let f = sampled((-0.99, 0.99), 1000, |s| -(1.0 - s * s).sqrt());
        let k = graph_curvature(&f).unwrap();
        for (s, v) in f.s.iter().zip(&k.f) {
            if s.abs() <= 0.9 {
                assert!((v - 1.0).abs() < 1e-3, "s = {s}: {v}");
            }
        }
    }

    #[test]
    fn graph_curvature_nonuniform_grid() {
        // parabola f = s^2 / 2 has K = 1 / (1 + s^2)^{3/2}
        let s: Vec<f64> = (0..200).map(|i| (i as f64 / 199.0).powi(2) * 2.0).collect();
        let f = SampledFunction::new(s.clone(), s.iter().map(|x| 0.5 * x * x).collect()).unwrap();
        let k = graph_curvature(&f).unwrap();
        for (i, x) in s.iter().enumerate().take(199).skip(1) {
            let want = 1.0 / (1.0 + x * x).powf(1.5);
            assert!((k.f[i] - want).abs() < 1e-10, "{i}");
        }
    }

    #[test]
    fn too_few_samples() {
        let f = sampled((0.0, 1.0), 4, |s| s);
        assert!(graph_curvature(&f).is_err());
    }

    #[test]
    fn monotone_function_has_no_extrema() {
        let sig = shape_signature(&sampled((0.0, 4.0), 500, |s| s.exp()), DEFAULT_NOISE_FLOOR).unwrap();
        assert_eq!(sig.extrema(), 0);
        assert!(sig.events.is_empty());
    }

    #[test]
    fn single_hump() {
        let sig = shape_signature(&sampled((-3.0, 3.0), 601, |s| (-s * s).exp()), DEFAULT_NOISE_FLOOR).unwrap();
        assert_eq!(sig.kinds(), vec![EventKind::Inflection, EventKind::Max, EventKind::Inflection]);
        let want = [-std::f64::consts::FRAC_1_SQRT_2, 0.0, std::f64::consts::FRAC_1_SQRT_2];
        for (e, w) in sig.events.iter().zip(want) {
            assert!((e.s - w).abs() < 1e-3, "{e:?}");
        }
    }

    #[test]
    fn sine_signature() {
        let sig = shape_signature(&sampled((0.1, 10.0), 2000, f64::sin), DEFAULT_NOISE_FLOOR).unwrap();
        use EventKind::*;
        // inflections at pi, 2 pi, 3 pi
        assert_eq!(sig.kinds(), vec![Max, Inflection, Min, Inflection, Max, Inflection]);
    }

    #[test]
    fn noise_below_floor_is_ignored() {
        let f = sampled((0.0, 1.0), 400, |s| s + 1e-9 * (300.0 * s).sin());
        let sig = shape_signature(&f, DEFAULT_NOISE_FLOOR).unwrap();
        assert_eq!(sig.extrema(), 0);
    }

    #[test]
    fn signature_invariant_under_shift() {
        let f = sampled((0.0, 6.0), 800, |s| s.sin() * (-0.2 * s).exp());
        let g = SampledFunction::new(f.s.clone(), f.f.iter().map(|v| v + 3.7).collect()).unwrap();
        let a = shape_signature(&graph_curvature(&f).unwrap(), DEFAULT_NOISE_FLOOR).unwrap();
        let b = shape_signature(&graph_curvature(&g).unwrap(), DEFAULT_NOISE_FLOOR).unwrap();
        assert!(shape_equivalent(&a, &b));
    }

    #[test]
    fn equivalence_examples() {
        let max = ShapeSignature { events: vec![ShapeEvent { kind: EventKind::Max, s: 1.0 }] };
        let min = ShapeSignature { events: vec![ShapeEvent { kind: EventKind::Min, s: 1.0 }] };
        assert!(shape_equivalent(&max, &max.clone()));
        assert!(!shape_equivalent(&max, &min));
    }

    #[test]
    fn level_curvature_of_circle_profile() {
        let pts = regular_polygon_vertices(12, 10.0, 0.0, Orientation::Ccw).unwrap();
        let curve = crate::geometry::curve_of(&make_float_polygon(pts, 9).unwrap());
        let prof = crate::eval::profile(&curve, 600).unwrap();
        let l2 = level_curvature(&prof, CurvatureSource::Curvature, 2).unwrap();
        assert!(l2.max_abs() < 1e-6);
        assert!(matches!(
            level_curvature(&prof, CurvatureSource::Torsion, 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn level_curvature_of_line() {
        let pts: Vec<Point> = (0..8).map(|i| Point::new3(i as f64, 0.5 * i as f64, 0.0)).collect();
        let curve = crate::geometry::curve_of(&make_float_polygon(pts, 4).unwrap());
        let prof = crate::eval::profile(&curve, 100).unwrap();
        for level in 1..=3 {
            let f = level_curvature(&prof, CurvatureSource::Curvature, level).unwrap();
            assert!(f.max_abs() < 1e-12);
        }
    }
}
