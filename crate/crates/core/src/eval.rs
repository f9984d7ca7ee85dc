//! Curve evaluation and differential geometry.
//!
//! Points come from the de Boor triangle (repeated convex combinations on
//! the float knots). Derivatives use the derivative spline: differenced
//! control points over the knot vector with both end knots dropped.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{BSplineCurve, Dim, Point, Vector};

/// Regularity threshold on `|C'|`, in model units.
pub const EPS_REGULAR: f64 = 1e-12;
/// Curvature threshold below which the evolute is undefined.
pub const EPS_CURVATURE: f64 = 1e-12;

/// Highest derivative order the evaluator caches.
const MAX_CACHED_ORDER: usize = 3;

/// Spline on raw knot data; degree 0 (piecewise constant) is allowed so the
/// derivative chain never has to special-case the last level.
#[derive(Debug, Clone)]
struct RawSpline {
    knots: Vec<f64>,
    degree: usize,
    points: Vec<Point>,
}

impl RawSpline {
    fn span(&self, t: f64) -> usize {
        let p = self.degree;
        let last = self.points.len() - 1;
        let b = self.knots[last + 1];
        if t >= b {
            let mut k = last;
            while k > p && self.knots[k] >= b {
                k -= 1;
            }
            return k;
        }
        let pos = self.knots[p..=last + 1].partition_point(|&k| k <= t);
        (p + pos - 1).clamp(p, last)
    }

    fn eval(&self, t: f64) -> Point {
        let p = self.degree;
        let k = self.span(t);
        let mut d: Vec<Point> = self.points[k - p..=k].to_vec();
        for r in 1..=p {
            for j in (r..=p).rev() {
                let lo = self.knots[j + k - p];
                let hi = self.knots[j + 1 + k - r];
                let a = (t - lo) / (hi - lo);
                d[j] = d[j - 1].lerp(&d[j], a);
            }
        }
        d[p]
    }

    /// Derivative spline, or `None` when the degree is already 0.
    fn derivative(&self) -> Option<RawSpline> {
        let p = self.degree;
        if p == 0 {
            return None;
        }
        let pts = self
            .points
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let h = self.knots[i + p + 1] - self.knots[i + 1];
                if h > 0.0 {
                    (w[1] - w[0]) * (p as f64 / h)
                } else {
                    Point::zero(w[0].dim())
                }
            })
            .collect();
        Some(RawSpline {
            knots: self.knots[1..self.knots.len() - 1].to_vec(),
            degree: p - 1,
            points: pts,
        })
    }
}

/// Evaluator that caches the derivative splines of a curve up to third
/// order; orders above the degree evaluate to zero.
#[derive(Debug, Clone)]
pub struct CurveEvaluator {
    levels: Vec<RawSpline>,
    domain: (f64, f64),
    dim: Dim,
    degree: usize,
}

impl CurveEvaluator {
    pub fn new(curve: &BSplineCurve) -> Self {
        let base = RawSpline {
            knots: curve.knots().knots().to_vec(),
            degree: curve.degree(),
            points: curve.points().to_vec(),
        };
        let mut levels = vec![base];
        while levels.len() <= MAX_CACHED_ORDER {
            match levels.last().and_then(RawSpline::derivative) {
                Some(d) => levels.push(d),
                None => break,
            }
        }
        CurveEvaluator { levels, domain: curve.domain(), dim: curve.dim(), degree: curve.degree() }
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    fn check(&self, t: f64) -> Result<()> {
        let (start, end) = self.domain;
        if t.is_nan() || t < start || t > end {
            return Err(Error::Domain { t, start, end });
        }
        Ok(())
    }

    pub fn point(&self, t: f64) -> Result<Point> {
        self.check(t)?;
        Ok(self.levels[0].eval(t))
    }

    /// `order`-th derivative for `order <= 3`.
    pub fn derivative(&self, t: f64, order: usize) -> Result<Vector> {
        self.check(t)?;
        if order > MAX_CACHED_ORDER {
            return Err(Error::InvalidArgument(format!("derivative order {order} exceeds {MAX_CACHED_ORDER}")));
        }
        Ok(match self.levels.get(order) {
            Some(l) => l.eval(t),
            None => Point::zero(self.dim),
        })
    }

    fn jet(&self, t: f64) -> Result<[Point; 4]> {
        self.check(t)?;
        let mut out = [Point::zero(self.dim); 4];
        for (o, l) in self.levels.iter().enumerate() {
            out[o] = l.eval(t);
        }
        Ok(out)
    }

    pub fn frenet(&self, t: f64) -> Result<FrenetData> {
        let jet = self.jet(t)?;
        frenet_from_jet(t, jet, self.dim)
    }

    pub fn evolute_point(&self, t: f64) -> Result<Point> {
        let [c, v, a, _] = self.jet(t)?;
        evolute_from_jet(t, c, v, a)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Point of the curve at `t` by the de Boor triangle.
pub fn de_boor_point(curve: &BSplineCurve, t: f64) -> Result<Point> {
    curve.check_domain(t)?;
    let raw = RawSpline {
        knots: curve.knots().knots().to_vec(),
        degree: curve.degree(),
        points: curve.points().to_vec(),
    };
    Ok(raw.eval(t))
}

/// Derivative spline of `curve` (degree `n - 1`, end knots dropped).
/// Fails for degree 1, whose derivative is piecewise constant.
pub fn derivative_curve(curve: &BSplineCurve) -> Result<BSplineCurve> {
    let raw = RawSpline {
        knots: curve.knots().knots().to_vec(),
        degree: curve.degree(),
        points: curve.points().to_vec(),
    };
    let d = raw.derivative().expect("curve degree is at least 1");
    if d.degree == 0 {
        return Err(Error::InvalidArgument("derivative of a degree-1 curve is piecewise constant".into()));
    }
    BSplineCurve::new(crate::geometry::KnotVector::new(d.knots, d.degree)?, d.points)
}

/// Derivatives `C', ..., C^(order)` at `t`, exact via derivative splines.
pub fn derivatives(curve: &BSplineCurve, t: f64, order: usize) -> Result<Vec<Vector>> {
    if order > curve.degree() {
        return Err(Error::InvalidArgument(format!(
            "derivative order {order} exceeds curve degree {}",
            curve.degree()
        )));
    }
    curve.check_domain(t)?;
    let mut level = RawSpline {
        knots: curve.knots().knots().to_vec(),
        degree: curve.degree(),
        points: curve.points().to_vec(),
    };
    let mut out = Vec::with_capacity(order);
    for _ in 0..order {
        level = level.derivative().expect("order bounded by degree");
        out.push(level.eval(t));
    }
    Ok(out)
}

/// Frenet frame and curvatures at one parameter value.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrenetData {
    pub t: f64,
    pub point: Point,
    pub velocity: Vector,
    pub acceleration: Vector,
    pub jerk: Vector,
    /// `|C' x C''| / |C'|^3`, never negative.
    pub curvature: f64,
    /// `(C' x C'') . C''' / |C' x C''|^2`; `None` for planar data.
    pub torsion: Option<f64>,
    pub tangent: Vector,
    /// Principal normal; `None` where the curvature vanishes.
    pub normal: Option<Vector>,
}

pub(crate) fn frenet_from_jet(t: f64, jet: [Point; 4], dim: Dim) -> Result<FrenetData> {
    let [point, velocity, acceleration, jerk] = jet;
    let speed = velocity.norm();
    if !(speed > EPS_REGULAR) {
        return Err(Error::Regularity { t, speed });
    }
    let b = velocity.cross(&acceleration);
    let bn2 = b.norm_squared();
    let curvature = bn2.sqrt() / (speed * speed * speed);
    let tangent = velocity / speed;
    let normal = b.cross(&velocity).normalized().filter(|_| bn2 > 0.0);
    let normal = normal.map(|n| match dim {
        Dim::Two => Point::new2(n.x(), n.y()),
        Dim::Three => n,
    });
    let torsion = match dim {
        Dim::Two => None,
        Dim::Three => Some(if bn2 > 0.0 { b.dot(&jerk) / bn2 } else { 0.0 }),
    };
    Ok(FrenetData { t, point, velocity, acceleration, jerk, curvature, torsion, tangent, normal })
}

pub(crate) fn evolute_from_jet(t: f64, c: Point, v: Vector, a: Vector) -> Result<Point> {
    let speed = v.norm();
    if !(speed > EPS_REGULAR) {
        return Err(Error::Regularity { t, speed });
    }
    let b = v.cross(&a);
    let bn2 = b.norm_squared();
    let curvature = bn2.sqrt() / (speed * speed * speed);
    if !(curvature > EPS_CURVATURE) {
        return Err(Error::CurvatureSingularity { t, curvature });
    }
    // N / kappa = (B x C') |C'|^2 / |C' x C''|^2
    let offset = b.cross(&v) * (v.norm_squared() / bn2);
    let e = c + offset;
    Ok(match c.dim() {
        Dim::Two => Point::new2(e.x(), e.y()),
        Dim::Three => e,
    })
}

/// Frenet data of the curve at `t`.
pub fn frenet(curve: &BSplineCurve, t: f64) -> Result<FrenetData> {
    CurveEvaluator::new(curve).frenet(t)
}

/// Center of curvature `C + N / kappa`.
pub fn evolute_point(curve: &BSplineCurve, t: f64) -> Result<Point> {
    CurveEvaluator::new(curve).evolute_point(t)
}

/// Farthest evolute point from a reference center.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EvoluteDeviation {
    pub deviation: f64,
    pub t: f64,
    pub evolute_point: Point,
}

/// Largest `|E(t) - center|` over `sample_count` uniform samples of the
/// domain, followed by one golden-section refinement around the discrete
/// maximum. Ties go to the smallest `t`.
pub fn max_evolute_deviation(curve: &BSplineCurve, center: Point, sample_count: usize) -> Result<EvoluteDeviation> {
    let ev = CurveEvaluator::new(curve);
    let (a, b) = ev.domain();
    max_deviation_of(|t| ev.evolute_point(t), a, b, center, sample_count)
}

pub(crate) fn max_deviation_of(
    evolute: impl Fn(f64) -> Result<Point>,
    a: f64,
    b: f64,
    center: Point,
    sample_count: usize,
) -> Result<EvoluteDeviation> {
    if sample_count < 100 {
        return Err(Error::InvalidArgument(format!("sample_count must be at least 100, got {sample_count}")));
    }
    let step = (b - a) / (sample_count - 1) as f64;
    let at = |i: usize| if i + 1 == sample_count { b } else { a + step * i as f64 };
    let mut best = EvoluteDeviation { deviation: -1.0, t: a, evolute_point: center };
    let mut best_i = 0;
    for i in 0..sample_count {
        let t = at(i);
        let e = evolute(t)?;
        let d = e.distance(&center);
        if d > best.deviation {
            best = EvoluteDeviation { deviation: d, t, evolute_point: e };
            best_i = i;
        }
    }
    let lo = at(best_i.saturating_sub(1));
    let hi = at((best_i + 1).min(sample_count - 1));
    let refined = golden_max(|t| evolute(t).map(|e| (e.distance(&center), e)), lo, hi)?;
    if refined.deviation > best.deviation {
        best = refined;
    }
    Ok(best)
}

fn golden_max(f: impl Fn(f64) -> Result<(f64, Point)>, mut lo: f64, mut hi: f64) -> Result<EvoluteDeviation> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..80 {
        if hi - lo <= 1e-15 * (1.0 + lo.abs()) {
            break;
        }
        if f1.0 >= f2.0 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let (t, (d, e)) = if f1.0 >= f2.0 { (x1, f1) } else { (x2, f2) };
    Ok(EvoluteDeviation { deviation: d, t, evolute_point: e })
}

/// One sample of a curvature profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub t: f64,
    pub s: f64,
    pub kappa: f64,
    pub tau: Option<f64>,
}

/// Curvature and torsion sampled uniformly in the curve parameter, with arc
/// length accumulated from the first sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureProfile {
    pub dim: Dim,
    pub samples: Vec<ProfileSample>,
}

impl CurvatureProfile {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn arc_length(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.s).collect()
    }

    pub fn curvature(&self) -> Vec<f64> {
        self.samples.iter().map(|p| p.kappa).collect()
    }

    /// Torsion column, `None` for planar profiles.
    pub fn torsion(&self) -> Option<Vec<f64>> {
        self.samples.iter().map(|p| p.tau).collect()
    }

    pub fn total_length(&self) -> f64 {
        self.samples.last().map_or(0.0, |p| p.s)
    }
}

// 5-point Gauss-Legendre on [-1, 1].
const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

pub(crate) fn gauss_legendre(f: &impl Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<f64> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (x, w) in GL5 {
        acc += w * f(mid + half * x)?;
    }
    Ok(acc * half)
}

/// Profile of any parametric curve given its jet `[C, C', C'', C''']`.
/// Quadrature intervals are split at `breakpoints` so piecewise
/// polynomial curves are integrated exactly per piece.
pub fn profile_from_jet(
    jet: impl Fn(f64) -> Result<[Point; 4]>,
    dim: Dim,
    a: f64,
    b: f64,
    sample_count: usize,
    breakpoints: &[f64],
) -> Result<CurvatureProfile> {
    if sample_count < 16 {
        return Err(Error::InvalidArgument(format!("profile needs at least 16 samples, got {sample_count}")));
    }
    let speed = |t: f64| jet(t).map(|j| j[1].norm());
    let step = (b - a) / (sample_count - 1) as f64;
    let mut samples = Vec::with_capacity(sample_count);
    let mut s = 0.0;
    let mut prev_t = a;
    for i in 0..sample_count {
        let t = if i + 1 == sample_count { b } else { a + step * i as f64 };
        if i > 0 {
            let mut lo = prev_t;
            let mut len = 0.0;
            for &k in breakpoints.iter().filter(|&&k| k > prev_t && k < t) {
                len += gauss_legendre(&speed, lo, k)?;
                lo = k;
            }
            len += gauss_legendre(&speed, lo, t)?;
            if !(len > 0.0) {
                return Err(Error::Regularity { t, speed: 0.0 });
            }
            s += len;
        }
        let fd = frenet_from_jet(t, jet(t)?, dim)?;
        samples.push(ProfileSample { t, s, kappa: fd.curvature, tau: fd.torsion });
        prev_t = t;
    }
    Ok(CurvatureProfile { dim, samples })
}

/// Curvature profile of a spline with `sample_count` samples uniform in `t`.
pub fn profile(curve: &BSplineCurve, sample_count: usize) -> Result<CurvatureProfile> {
    let ev = CurveEvaluator::new(curve);
    let (a, b) = ev.domain();
    profile_from_jet(|t| ev.jet(t), curve.dim(), a, b, sample_count, &curve.breakpoints())
}

/// Arc length of the spline over `[a, b]` by piecewise Gauss-Legendre.
pub fn arc_length(curve: &BSplineCurve, a: f64, b: f64) -> Result<f64> {
    let ev = CurveEvaluator::new(curve);
    ev.check(a)?;
    ev.check(b)?;
    let speed = |t: f64| ev.derivative(t, 1).map(|v| v.norm());
    let mut lo = a;
    let mut len = 0.0;
    for k in curve.breakpoints().into_iter().filter(|&k| k > a && k < b) {
        len += gauss_legendre(&speed, lo, k)?;
        lo = k;
    }
    len += gauss_legendre(&speed, lo, b)?;
    Ok(len)
}
