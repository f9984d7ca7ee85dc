//! Reproducible numerical experiments built from the kernel operations.
//! Each function returns a serializable report; nothing here does I/O.

use serde::Serialize;

use crate::constructors::{
    analytic_profile, bezier_arc_polygon, conical_spiral, mineur_farin_polygon, sample_analytic_to_polygon,
    MineurFarinParams, SamplingSpec,
};
use crate::convert::{to_clamped, to_float, ConversionReport};
use crate::error::{invalid, Result};
use crate::eval::{max_evolute_deviation, profile, CurvatureProfile, CurveEvaluator, EvoluteDeviation};
use crate::geometry::{curve_of, make_float_polygon, regular_polygon_vertices, ControlPolygon, Orientation, Point};
use crate::metrics::{
    harmonicity_report, level_curvature, shape_equivalent, shape_signature, CurvatureSource, HarmonicityReport,
    HarmonicitySpec, SampledFunction, ShapeSignature, DEFAULT_NOISE_FLOOR,
};
use crate::positioning::{position_endpoints, End, EndTarget, PositioningOptions, PositioningReport};

pub const DEFAULT_SAMPLES_PER_SEGMENT: usize = 10_000;
/// Total samples for the spiral comparison. Level-2 functions take third
/// differences of κ, so much denser grids push rounding noise above the
/// signature noise floor.
pub const SPIRAL_DEFAULT_SAMPLES: usize = 2_000;

/// Default vertex count of the circle test: a hexagon for cubics, a
/// dodecagon otherwise.
pub fn default_circle_vertices(degree: usize) -> usize {
    if degree == 3 {
        6
    } else {
        12
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CircleTestReport {
    pub degree: usize,
    pub vertex_count: usize,
    pub radius: f64,
    pub samples_per_segment: usize,
    /// Distance of the spline's segment endpoints from the center.
    pub effective_radius: f64,
    pub bspline: EvoluteDeviation,
    /// Arc Bézier on the spline segment endpoints.
    pub bezier: EvoluteDeviation,
    /// Arc Bézier on the same angles but on the circle of `radius`.
    pub bezier_on_radius: EvoluteDeviation,
}

/// Max evolute deviation from the center for the float N-gon spline and
/// for the matched circular-arc Bézier of the same degree.
pub fn circle_test(degree: usize, vertex_count: Option<usize>, radius: f64, samples_per_segment: usize) -> Result<CircleTestReport> {
    if degree < 2 {
        return invalid(format!("the circle test needs degree at least 2, got {degree}"));
    }
    let count = vertex_count.unwrap_or_else(|| default_circle_vertices(degree));
    let pts = regular_polygon_vertices(count, radius, 0.0, Orientation::Ccw)?;
    let poly = make_float_polygon(pts, degree)?;
    let curve = curve_of(&poly);
    let center = Point::new2(0.0, 0.0);
    let segments = poly.segment_count();
    let bspline = max_evolute_deviation(&curve, center, samples_per_segment * segments)?;

    let ev = CurveEvaluator::new(&curve);
    let a = ev.point(degree as f64)?;
    let b = ev.point(degree as f64 + 1.0)?;
    let effective_radius = a.norm();
    let bezier_dev = |a: Point, b: Point| -> Result<EvoluteDeviation> {
        let arc = bezier_arc_polygon(a, b, center, degree)?;
        max_evolute_deviation(&curve_of(&arc.polygon), center, samples_per_segment)
    };
    let bezier = bezier_dev(a, b)?;
    let scale = radius / effective_radius;
    let bezier_on_radius = bezier_dev(a * scale, b * (radius / b.norm()))?;
    Ok(CircleTestReport {
        degree,
        vertex_count: count,
        radius,
        samples_per_segment,
        effective_radius,
        bspline,
        bezier,
        bezier_on_radius,
    })
}

/// The single-segment degree-9 arc: ten dodecagon vertices starting at
/// 225° and running clockwise.
pub fn single_segment_arc(radius: f64) -> Result<ControlPolygon> {
    let pts = regular_polygon_vertices(12, radius, 225f64.to_radians(), Orientation::Cw)?;
    make_float_polygon(pts[..10].to_vec(), 9)
}

#[derive(Debug, Clone, Serialize)]
pub struct BPolygonShape {
    pub vertices: Vec<Point>,
    pub leg_lengths: Vec<f64>,
    /// Unsigned angles between consecutive legs.
    pub angles: Vec<f64>,
}

/// Legs and joint angles of the Bézier polygon of the single-segment arc.
pub fn single_segment_bpolygon(radius: f64) -> Result<BPolygonShape> {
    let (clamped, _) = to_clamped(&single_segment_arc(radius)?)?;
    let v = clamped.vertices().to_vec();
    let legs: Vec<Point> = v.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(BPolygonShape {
        leg_lengths: legs.iter().map(|l| l.norm()).collect(),
        angles: legs.windows(2).map(|w| w[0].cross(&w[1]).norm().atan2(w[0].dot(&w[1]))).collect(),
        vertices: v,
    })
}

/// Truncation toward zero to `decimals` places.
pub fn truncate_decimals(x: f64, decimals: i32) -> f64 {
    let f = 10f64.powi(decimals);
    (x * f).trunc() / f
}

#[derive(Debug, Clone, Serialize)]
pub struct PerturbReport {
    pub baseline_deviation: f64,
    pub perturbed_deviation: f64,
    pub original_vertex: Point,
    pub rounded_vertex: Point,
    pub perturbation: f64,
    pub float_before: Vec<Point>,
    pub float_after: Vec<Point>,
    pub displacements: Vec<f64>,
    pub max_displacement: f64,
    /// Largest float-vertex displacement over the perturbation size.
    pub amplification: f64,
    /// Float polygon change after an unperturbed round trip.
    pub round_trip_error: f64,
    pub conversion: ConversionReport,
    pub harmonicity_before: HarmonicityReport,
    pub harmonicity_after: HarmonicityReport,
}

/// Cuts the second clamped vertex of the single-segment arc to three
/// decimals and converts back to float form.
pub fn perturb_test(samples: usize) -> Result<PerturbReport> {
    let radius = 10.0;
    let float = single_segment_arc(radius)?;
    let center = Point::new2(0.0, 0.0);
    let baseline = max_evolute_deviation(&curve_of(&float), center, samples)?;
    let (clamped, _) = to_clamped(&float)?;

    let (back, _) = to_float(&clamped)?;
    let round_trip_error = back
        .vertices()
        .iter()
        .zip(float.vertices())
        .map(|(p, q)| p.distance(q))
        .fold(0.0, f64::max);

    let mut v = clamped.vertices().to_vec();
    let original_vertex = v[1];
    let rounded_vertex = Point::new2(truncate_decimals(v[1].x(), 3), truncate_decimals(v[1].y(), 3));
    v[1] = rounded_vertex;
    let (after, conversion) = to_float(&clamped.with_vertices(v)?)?;
    let perturbed = max_evolute_deviation(&curve_of(&after), center, samples)?;
    let displacements: Vec<f64> = after.vertices().iter().zip(float.vertices()).map(|(p, q)| p.distance(q)).collect();
    let max_displacement = displacements.iter().cloned().fold(0.0, f64::max);
    let perturbation = original_vertex.distance(&rounded_vertex);
    let spec = HarmonicitySpec::monotone();
    Ok(PerturbReport {
        baseline_deviation: baseline.deviation,
        perturbed_deviation: perturbed.deviation,
        original_vertex,
        rounded_vertex,
        perturbation,
        float_before: float.vertices().to_vec(),
        float_after: after.vertices().to_vec(),
        max_displacement,
        amplification: max_displacement / perturbation,
        displacements,
        round_trip_error,
        conversion,
        harmonicity_before: harmonicity_report(&float, &spec)?,
        harmonicity_after: harmonicity_report(&after, &spec)?,
    })
}

/// Curvature behaviour of one curve.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureSummary {
    pub profile: CurvatureProfile,
    pub signature: ShapeSignature,
    /// No curvature extremum above the noise floor.
    pub monotone: bool,
    /// `(max κ - min κ) / mean κ`.
    pub relative_spread: f64,
}

fn summarize(profile: CurvatureProfile) -> Result<CurvatureSummary> {
    let k = profile.curvature();
    let f = SampledFunction::new(profile.arc_length(), k.clone())?;
    let signature = shape_signature(&f, DEFAULT_NOISE_FLOOR)?;
    let (lo, hi) = k.iter().fold((f64::MAX, f64::MIN), |(l, h), &v| (l.min(v), h.max(v)));
    let mean = k.iter().sum::<f64>() / k.len() as f64;
    Ok(CurvatureSummary {
        monotone: signature.extrema() == 0,
        relative_spread: if mean > 0.0 { (hi - lo) / mean } else { 0.0 },
        signature,
        profile,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub params: MineurFarinParams,
    pub vertices: Vec<Point>,
    pub degree: usize,
    pub bezier: CurvatureSummary,
    pub bspline: CurvatureSummary,
}

/// Bézier and float B-spline of degree `count - 1` on one Mineur-Farin
/// polygon.
pub fn bezier_bspline_compare(q: f64, theta: f64, count: usize, samples: usize) -> Result<ComparisonReport> {
    if count < 3 {
        return invalid(format!("the comparison needs at least 3 vertices, got {count}"));
    }
    let params = MineurFarinParams::planar(1.0, q, theta, count);
    let degree = count - 1;
    let float = mineur_farin_polygon(&params, degree)?;
    let bez = ControlPolygon::clamped(float.vertices().to_vec(), crate::geometry::KnotVector::bezier(degree, 0.0, 1.0)?)?;
    Ok(ComparisonReport {
        params,
        vertices: float.vertices().to_vec(),
        degree,
        bezier: summarize(profile(&curve_of(&bez), samples)?)?,
        bspline: summarize(profile(&curve_of(&float), samples)?)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TypicalReport {
    pub params: MineurFarinParams,
    pub degree: usize,
    pub polygon: ControlPolygon,
    pub curvature: CurvatureSummary,
    pub harmonicity: HarmonicityReport,
}

/// Float B-spline on a Mineur-Farin configuration.
pub fn typical_curve(params: &MineurFarinParams, degree: usize, samples_per_segment: usize) -> Result<TypicalReport> {
    let poly = mineur_farin_polygon(params, degree)?;
    let prof = profile(&curve_of(&poly), (samples_per_segment * poly.segment_count()).max(16))?;
    let spec = HarmonicitySpec { max_turning_angle: std::f64::consts::PI, ..HarmonicitySpec::monotone() };
    Ok(TypicalReport {
        params: *params,
        degree,
        curvature: summarize(prof)?,
        harmonicity: harmonicity_report(&poly, &spec)?,
        polygon: poly,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpiralFunction {
    Curvature,
    Torsion,
    Curvature2,
    Torsion2,
}

impl SpiralFunction {
    pub const ALL: [SpiralFunction; 4] =
        [SpiralFunction::Curvature, SpiralFunction::Torsion, SpiralFunction::Curvature2, SpiralFunction::Torsion2];

    pub fn name(self) -> &'static str {
        match self {
            SpiralFunction::Curvature => "kappa",
            SpiralFunction::Torsion => "tau",
            SpiralFunction::Curvature2 => "kappa2",
            SpiralFunction::Torsion2 => "kappa_tau2",
        }
    }

    fn source_level(self) -> (CurvatureSource, usize) {
        match self {
            SpiralFunction::Curvature => (CurvatureSource::Curvature, 1),
            SpiralFunction::Torsion => (CurvatureSource::Torsion, 1),
            SpiralFunction::Curvature2 => (CurvatureSource::Curvature, 2),
            SpiralFunction::Torsion2 => (CurvatureSource::Torsion, 2),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpiralComparison {
    pub function: SpiralFunction,
    pub analytic: Option<ShapeSignature>,
    pub spline: Option<ShapeSignature>,
    pub equivalent: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpiralReport {
    pub degree: usize,
    pub sampling: SamplingSpec,
    /// Analytic parameter range matched to the spline domain.
    pub shared_domain: (f64, f64),
    pub samples: usize,
    pub polygon: ControlPolygon,
    pub comparisons: Vec<SpiralComparison>,
    #[serde(skip)]
    pub functions: Vec<(SpiralFunction, SampledFunction, Option<SampledFunction>)>,
}

impl SpiralReport {
    pub fn all_equivalent(&self) -> bool {
        self.comparisons.iter().all(|c| c.equivalent)
    }
}

/// Signatures of κ, τ and their level-2 curvatures for the conical spiral
/// and for the float spline sampled from it, over the shared domain.
pub fn spiral_approx(degree: usize, sampling: SamplingSpec, samples: usize) -> Result<SpiralReport> {
    let spiral = conical_spiral();
    let polygon = sample_analytic_to_polygon(&spiral, &sampling, degree)?;
    let (sa, sb) = sampling.shared_domain(degree);
    let analytic = analytic_profile(&spiral, sa, sb, samples)?;
    let spline = profile(&curve_of(&polygon), samples)?;

    let mut comparisons = Vec::new();
    let mut functions = Vec::new();
    for func in SpiralFunction::ALL {
        let (source, level) = func.source_level();
        let fa = level_curvature(&analytic, source, level)?;
        let sa = shape_signature(&fa, DEFAULT_NOISE_FLOOR)?;
        // below degree 3 the spline torsion vanishes identically and its
        // curvature is piecewise trivial, so signatures are not comparable
        let (fs, ss, note) = if degree < 3 {
            (None, None, Some(format!("degree {degree} splines carry no comparable curvature structure")))
        } else {
            let fs = level_curvature(&spline, source, level)?;
            let ss = shape_signature(&fs, DEFAULT_NOISE_FLOOR)?;
            (Some(fs), Some(ss), None)
        };
        let equivalent = ss.as_ref().is_some_and(|s| shape_equivalent(&sa, s));
        comparisons.push(SpiralComparison { function: func, analytic: Some(sa), spline: ss, equivalent, note });
        functions.push((func, fa, fs));
    }
    Ok(SpiralReport {
        degree,
        sampling,
        shared_domain: (sa, sb),
        samples,
        polygon,
        comparisons,
        functions,
    })
}

/// Convex, regular polygon without a limit on monotone κ̂ runs.
pub fn convex_spec() -> HarmonicitySpec {
    HarmonicitySpec { max_monotone_runs: usize::MAX, ..HarmonicitySpec::monotone() }
}

#[derive(Debug, Clone, Serialize)]
pub struct CirclePositioningReport {
    pub vertex_count: usize,
    pub degree: usize,
    pub radius: f64,
    pub targets: Vec<EndTarget>,
    pub initial_offsets: Vec<f64>,
    pub report: PositioningReport,
    /// Distance of the positioned curve's ends from the circle.
    pub end_radius_errors: Vec<f64>,
    pub polygon: ControlPolygon,
}

/// Float polygon on `vertex_count` dodecagon vertices (wrapping past a full
/// turn), positioned so its ends sit on the true circle with circle
/// tangents.
pub fn dodecagon_positioning(vertex_count: usize, degree: usize, radius: f64, fair: bool) -> Result<CirclePositioningReport> {
    let ring = regular_polygon_vertices(12, radius, 0.0, Orientation::Ccw)?;
    let pts: Vec<Point> = (0..vertex_count).map(|i| ring[i % 12]).collect();
    let poly = make_float_polygon(pts, degree)?;
    // curve ends lie on the rays through the Greville abscissae
    let step = std::f64::consts::PI / 6.0;
    let angle = |t: f64| step * (t - 0.5 * (degree + 1) as f64);
    let target = |a: f64, which| EndTarget::new(Point::new2(radius * a.cos(), radius * a.sin()), Point::new2(-a.sin(), a.cos()), which);
    let targets = vec![
        target(angle(degree as f64), End::Start)?,
        target(angle(vertex_count as f64), End::End)?,
    ];
    let initial_offsets = targets
        .iter()
        .map(|t| crate::positioning::measure_end_mismatch(&poly, t).map(|m| m.offset.norm()))
        .collect::<Result<_>>()?;
    let opts = PositioningOptions { spec: convex_spec(), fair, ..Default::default() };
    let (polygon, report) = position_endpoints(&poly, &targets, &opts)?;
    let curve = curve_of(&polygon);
    let ev = CurveEvaluator::new(&curve);
    let (a, b) = curve.domain();
    let end_radius_errors = vec![(ev.point(a)?.norm() - radius).abs(), (ev.point(b)?.norm() - radius).abs()];
    Ok(CirclePositioningReport { vertex_count, degree, radius, targets, initial_offsets, report, end_radius_errors, polygon })
}
