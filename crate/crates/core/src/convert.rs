//! Format conversions between float polygons, clamped polygons and Bézier
//! segment polygons.
//!
//! Float → clamped and segment extraction use Boehm knot insertion only,
//! every new vertex a convex combination of two old ones. Clamped → float
//! runs the insertion relations backwards (unclamping), which divides by
//! `1 - α` or `α`: an extrapolation whose ratio is recorded in the report.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::geometry::{curve_of, BSplineCurve, ControlPolygon, KnotVector, Point, PolygonFormat};

/// Relative tolerance for "uniformly spaced" interior knots in [`to_float`].
const UNIFORM_KNOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConversionDirection {
    FloatToClamped,
    ClampedToFloat,
    SegmentExtraction,
}

/// Bookkeeping of one conversion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConversionReport {
    pub direction: ConversionDirection,
    pub inserted_knots: Vec<f64>,
    pub removed_knots: Vec<f64>,
    /// Largest coefficient magnitude used by an extrapolation step; zero when
    /// only convex combinations were used.
    pub max_extrapolation_ratio: f64,
}

/// Boehm insertion of one knot `u` in the curve domain.
pub fn insert_knot(curve: &BSplineCurve, u: f64) -> Result<BSplineCurve> {
    curve.check_domain(u)?;
    let n = curve.degree();
    let t = curve.knots().knots();
    let mult = curve.knots().multiplicity(u);
    if mult + 1 > n + 1 {
        return invalid(format!("knot {u} already has multiplicity {mult}; degree {n} allows at most {}", n + 1));
    }
    let p = curve.points();
    let k = (t.partition_point(|&x| x <= u) - 1).min(t.len() - 2);

    let mut q = Vec::with_capacity(p.len() + 1);
    for i in 0..=p.len() {
        if i + n <= k {
            q.push(p[i]);
        } else if i > k {
            q.push(p[i - 1]);
        } else {
            let alpha = (u - t[i]) / (t[i + n] - t[i]);
            debug_assert!((0.0..=1.0).contains(&alpha));
            if alpha == 0.0 {
                q.push(p[i - 1]);
            } else {
                q.push(p[i - 1].lerp(&p[i], alpha));
            }
        }
    }
    let mut knots = t.to_vec();
    knots.insert(k + 1, u);
    BSplineCurve::new(KnotVector::new(knots, n)?, q)
}

/// Inserts `u` until it reaches multiplicity `target`; returns how many
/// copies went in.
fn raise_multiplicity(curve: &mut BSplineCurve, u: f64, target: usize) -> Result<usize> {
    let mut count = 0;
    while curve.knots().multiplicity(u) < target {
        *curve = insert_knot(curve, u)?;
        count += 1;
    }
    Ok(count)
}

/// Clamps the start of the domain: knot `a = t_n` raised to multiplicity
/// `n`, leading vertices with no support on the domain dropped.
fn clamp_start(curve: &BSplineCurve, inserted: &mut Vec<f64>) -> Result<BSplineCurve> {
    let n = curve.degree();
    let (a, _) = curve.domain();
    let mut c = curve.clone();
    let added = raise_multiplicity(&mut c, a, n)?;
    inserted.extend(std::iter::repeat_n(a, added));

    let t = c.knots().knots();
    let s = t.iter().position(|&x| x == a).expect("domain start is a knot");
    let m = c.knots().multiplicity(a);
    let first = s + m - n - 1;
    let mut knots = vec![a; n + 1];
    knots.extend_from_slice(&t[s + m..]);
    let points = c.points()[first..].to_vec();
    Ok(BSplineCurve::from_parts_unchecked(knots, n, points, curve.dim()))
}

/// Clamps both domain ends; the curve is unchanged on its domain.
pub fn clamp_curve(curve: &BSplineCurve) -> Result<(BSplineCurve, Vec<f64>)> {
    let mut inserted = Vec::new();
    let c = clamp_start(curve, &mut inserted)?;
    let mut tail = Vec::new();
    let c = clamp_start(&c.reversed(), &mut tail)?.reversed();
    inserted.extend(tail.into_iter().map(|u| -u));
    // recheck through the validating constructor
    let c = BSplineCurve::new(KnotVector::new(c.knots().knots().to_vec(), c.degree())?, c.points().to_vec())?;
    Ok((c, inserted))
}

/// Float polygon → clamped polygon of the same curve (the closed format).
pub fn to_clamped(polygon: &ControlPolygon) -> Result<(ControlPolygon, ConversionReport)> {
    if !polygon.is_float() {
        return invalid("to_clamped expects a float-format polygon");
    }
    let (clamped, inserted) = clamp_curve(&curve_of(polygon))?;
    let poly = ControlPolygon::clamped(clamped.points().to_vec(), clamped.knots().clone())?;
    let report = ConversionReport {
        direction: ConversionDirection::FloatToClamped,
        inserted_knots: inserted,
        removed_knots: Vec::new(),
        max_extrapolation_ratio: 0.0,
    };
    Ok((poly, report))
}

/// Clamped polygon → the unique float polygon of the same curve.
///
/// Requires simple, uniformly spaced interior knots. The result lives on the
/// implied knots `0..N+n`, an affine reparametrization of the input.
pub fn to_float(polygon: &ControlPolygon) -> Result<(ControlPolygon, ConversionReport)> {
    let knots = match polygon.format() {
        PolygonFormat::Clamped(k) => k,
        PolygonFormat::Float => return invalid("to_float expects a clamped polygon"),
    };
    let p = knots.degree();
    let (a, b) = knots.domain();
    let interior = knots.interior_knots();
    if let Some((u, m)) = interior.iter().find(|(_, m)| *m != 1) {
        return Err(Error::NoExactFloatForm(format!("interior knot {u} has multiplicity {m}")));
    }
    let delta = (b - a) / (interior.len() + 1) as f64;
    for (i, (u, _)) in interior.iter().enumerate() {
        let expected = a + delta * (i + 1) as f64;
        if (u - expected).abs() > UNIFORM_KNOT_TOL * delta {
            return Err(Error::NoExactFloatForm(format!(
                "interior knot {u} breaks uniform spacing {delta} (expected {expected})"
            )));
        }
    }

    let mut u: Vec<f64> = knots.knots().to_vec();
    let mut pts: Vec<Point> = polygon.vertices().to_vec();
    let last = pts.len() - 1;
    let mut ratio: f64 = 0.0;

    // Left end: peel the repeated start knot outwards.
    for i in 0..p.saturating_sub(1) {
        u[p - i - 1] = a - (i + 1) as f64 * delta;
        for j in (0..=i).rev() {
            let k = p - 1 - (i - j);
            let alpha = (u[p] - u[k]) / (u[p + j + 1] - u[k]);
            let inv = 1.0 / (1.0 - alpha);
            ratio = ratio.max(inv.abs()).max((alpha * inv).abs());
            pts[j] = (pts[j] - pts[j + 1] * alpha) * inv;
        }
    }
    u[0] = a - p as f64 * delta;

    // Right end, mirrored.
    for i in 0..p.saturating_sub(1) {
        u[last + i + 2] = b + (i + 1) as f64 * delta;
        for j in (0..=i).rev() {
            let alpha = (u[last + 1] - u[last - j]) / (u[last - j + i + 2] - u[last - j]);
            let inv = 1.0 / alpha;
            ratio = ratio.max(inv.abs()).max(((1.0 - alpha) * inv).abs());
            pts[last - j] = (pts[last - j] - pts[last - j - 1] * (1.0 - alpha)) * inv;
        }
    }
    let m = u.len() - 1;
    u[m] = b + p as f64 * delta;
    debug_assert!(u.windows(2).all(|w| ((w[1] - w[0]) - delta).abs() <= 1e-9 * delta.abs().max(1.0)));

    let mut removed = vec![a; p.saturating_sub(1)];
    removed.extend(std::iter::repeat_n(b, p.saturating_sub(1)));
    let report = ConversionReport {
        direction: ConversionDirection::ClampedToFloat,
        inserted_knots: Vec::new(),
        removed_knots: removed,
        max_extrapolation_ratio: ratio,
    };
    Ok((ControlPolygon::float(pts, p)?, report))
}

/// Bézier control polygon of every polynomial span, in parameter order.
pub fn extract_bezier_segments(curve: &BSplineCurve) -> Result<Vec<ControlPolygon>> {
    Ok(extract_bezier_segments_with_report(curve)?.0)
}

pub fn extract_bezier_segments_with_report(curve: &BSplineCurve) -> Result<(Vec<ControlPolygon>, ConversionReport)> {
    let n = curve.degree();
    let (mut c, mut inserted) = clamp_curve(curve)?;
    for (u, _) in c.knots().interior_knots() {
        let added = raise_multiplicity(&mut c, u, n)?;
        inserted.extend(std::iter::repeat_n(u, added));
    }
    let breaks = c.breakpoints();
    let pts = c.points();
    debug_assert_eq!(pts.len(), n * (breaks.len() - 1) + 1);
    let segments = breaks
        .windows(2)
        .enumerate()
        .map(|(j, w)| {
            ControlPolygon::clamped(pts[j * n..=j * n + n].to_vec(), KnotVector::bezier(n, w[0], w[1])?)
        })
        .collect::<Result<Vec<_>>>()?;
    let report = ConversionReport {
        direction: ConversionDirection::SegmentExtraction,
        inserted_knots: inserted,
        removed_knots: Vec::new(),
        max_extrapolation_ratio: 0.0,
    };
    Ok((segments, report))
}
