use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use floatspline::constructors::{MineurFarinParams, SamplingSpec};
use floatspline::convert::{extract_bezier_segments, to_clamped, to_float};
use floatspline::eval::{de_boor_point, profile};
use floatspline::experiments::{
    circle_test, convex_spec, default_circle_vertices, bezier_bspline_compare, perturb_test, spiral_approx, typical_curve,
    DEFAULT_SAMPLES_PER_SEGMENT, SPIRAL_DEFAULT_SAMPLES,
};
use floatspline::metrics::HarmonicitySpec;
use floatspline::io::{level_to_csv, points_from_json, polygon_from_json, polygon_to_json, profile_to_csv};
use floatspline::positioning::{
    default_bridge, join_float_polygons, junction_smoothness_check, position_endpoints, End, EndTarget,
    PositioningOptions, DEFAULT_MAX_ITER, DEFAULT_TOL_ANGLE,
};
use floatspline::{
    curve_of, make_float_polygon, regular_polygon_vertices, ControlPolygon, KnotVector, Orientation, Point,
};

use crate::error::CliError;
use crate::output::{read_text, Outputs};
use crate::svg::Plot;
use crate::Global;

const PLOT_SAMPLES: usize = 600;

/// What a command prints, and the tolerance violation it found, if any.
#[derive(Default)]
pub struct Summary {
    pub text: String,
    pub failure: Option<String>,
}

impl Summary {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

type CommandResult = Result<(Outputs, Summary), CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn positive(name: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(usage(format!("--{name} must be positive, got {x}")))
    }
}

fn samples(g: &Global, default: usize) -> Result<usize, CliError> {
    match g.samples {
        Some(0) => Err(usage("--samples must be positive")),
        Some(n) => Ok(n),
        None => Ok(default),
    }
}

fn read_polygon(path: &Path) -> Result<ControlPolygon, CliError> {
    Ok(polygon_from_json(&read_text(path)?)?)
}

fn circle_degree(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n @ (3 | 5 | 7 | 9)) => Ok(n),
        _ => Err(format!("degree must be one of 3, 5, 7, 9 (got {s})")),
    }
}

#[derive(Debug, Args)]
pub struct CircleArgs {
    #[arg(long, default_value = "9", value_parser = circle_degree)]
    pub degree: usize,
    /// Polygon vertex count; 6 for degree 3 and 12 otherwise.
    #[arg(long)]
    pub vertices: Option<usize>,
    #[arg(long, default_value_t = 10.0)]
    pub radius: f64,
}

pub fn circle(a: &CircleArgs, g: &Global) -> CommandResult {
    let radius = positive("radius", a.radius)?;
    let count = a.vertices.unwrap_or_else(|| default_circle_vertices(a.degree));
    if count <= a.degree {
        return Err(usage(format!("degree {} needs more than {} vertices", a.degree, count)));
    }
    let report = circle_test(a.degree, Some(count), radius, samples(g, DEFAULT_SAMPLES_PER_SEGMENT)?)?;
    let poly = make_float_polygon(regular_polygon_vertices(count, radius, 0.0, Orientation::Ccw)?, a.degree)?;
    let curve = curve_of(&poly);

    let stem = format!("circle-deg{}", a.degree);
    let mut out = Outputs::default();
    out.json(format!("{stem}.json"), &report);
    out.csv(format!("{stem}.csv"), profile_to_csv(&profile(&curve, PLOT_SAMPLES)?));
    let mut closed = poly.vertices().to_vec();
    closed.push(closed[0]);
    out.svg(format!("{stem}.svg"), Plot::default().polyline("polygon", &closed).spline(&curve, PLOT_SAMPLES, true).render());

    let mut s = Summary::default();
    s.line(format!("degree {} with {} vertices, radius {}", report.degree, report.vertex_count, report.radius));
    s.line(format!("B-spline max evolute deviation {:.6e}", report.bspline.deviation));
    s.line(format!("Bezier max evolute deviation   {:.6e}", report.bezier.deviation));
    s.line(format!("Bezier on the radius-{} circle  {:.6e}", report.radius, report.bezier_on_radius.deviation));
    Ok((out, s))
}

pub fn perturb(g: &Global) -> CommandResult {
    let report = perturb_test(samples(g, DEFAULT_SAMPLES_PER_SEGMENT)?)?;
    let mut out = Outputs::default();
    out.json("perturb.json", &report);
    let mut csv = String::from("index,x_before,y_before,x_after,y_after,displacement\n");
    for (i, ((b, a), d)) in report.float_before.iter().zip(&report.float_after).zip(&report.displacements).enumerate() {
        writeln!(csv, "{i},{:.14e},{:.14e},{:.14e},{:.14e},{:.14e}", b.x(), b.y(), a.x(), a.y(), d).unwrap();
    }
    out.csv("perturb.csv", csv);
    let after = make_float_polygon(report.float_after.clone(), 9)?;
    out.svg(
        "perturb.svg",
        Plot::default()
            .polyline("reference", &report.float_before)
            .polyline("polygon", &report.float_after)
            .spline(&curve_of(&after), PLOT_SAMPLES, false)
            .render(),
    );

    let mut s = Summary::default();
    s.line(format!("vertex {:?} truncated to {:?}", report.original_vertex, report.rounded_vertex));
    s.line(format!("evolute deviation {:.6e} -> {:.6e}", report.baseline_deviation, report.perturbed_deviation));
    s.line(format!("max float vertex displacement {:.6e}, amplification {:.3e}", report.max_displacement, report.amplification));
    s.line(format!("unperturbed round trip error {:.3e}", report.round_trip_error));
    Ok((out, s))
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Leg elongation coefficient.
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// Turning angle between legs, degrees.
    #[arg(long, default_value_t = 90.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 5)]
    pub count: usize,
}

pub fn compare(a: &CompareArgs, g: &Global) -> CommandResult {
    if a.count < 3 {
        return Err(usage(format!("--count must be at least 3, got {}", a.count)));
    }
    let report = bezier_bspline_compare(positive("q", a.q)?, a.theta.to_radians(), a.count, samples(g, DEFAULT_SAMPLES_PER_SEGMENT)?)?;
    let bezier = ControlPolygon::clamped(report.vertices.clone(), KnotVector::bezier(a.count - 1, 0.0, 1.0)?)?;
    let float = make_float_polygon(report.vertices.clone(), report.degree)?;

    let mut out = Outputs::default();
    out.json("compare.json", &report);
    out.csv("compare-bezier.csv", profile_to_csv(&report.bezier.profile));
    out.csv("compare-bspline.csv", profile_to_csv(&report.bspline.profile));
    let mut plot = Plot::default();
    plot.polyline("polygon", &report.vertices).spline(&curve_of(&float), PLOT_SAMPLES, false);
    let bez_trace: Vec<Point> = {
        let c = curve_of(&bezier);
        (0..PLOT_SAMPLES).map(|i| de_boor_point(&c, i as f64 / (PLOT_SAMPLES - 1) as f64)).collect::<Result<_, _>>()?
    };
    plot.polyline("bezier", &bez_trace);
    out.svg("compare.svg", plot.render());

    let mut s = Summary::default();
    for (name, c) in [("Bezier", &report.bezier), ("B-spline", &report.bspline)] {
        s.line(format!(
            "{name}: curvature extrema {}, monotone {}, relative spread {:.3e}",
            c.signature.extrema(),
            c.monotone,
            c.relative_spread
        ));
    }
    Ok((out, s))
}

#[derive(Debug, Args)]
pub struct SpiralArgs {
    #[arg(long, default_value_t = 8)]
    pub degree: usize,
    /// First sample parameter.
    #[arg(long, default_value_t = 0.0)]
    pub s0: f64,
    /// Parameter step between samples.
    #[arg(long, default_value_t = 1.0)]
    pub h: f64,
    /// Number of sampled points.
    #[arg(long, default_value_t = 20)]
    pub count: usize,
}

pub fn spiral(a: &SpiralArgs, g: &Global) -> CommandResult {
    if a.degree == 0 || a.count < a.degree + 1 {
        return Err(usage(format!("--count must be at least degree + 1 = {}", a.degree + 1)));
    }
    let sampling = SamplingSpec { s0: a.s0, h: positive("h", a.h)?, count: a.count };
    let report = spiral_approx(a.degree, sampling, samples(g, SPIRAL_DEFAULT_SAMPLES)?)?;

    let mut out = Outputs::default();
    out.json("spiral.json", &report);
    out.polygon("spiral-polygon.json", polygon_to_json(&report.polygon));
    for (func, analytic, spline) in &report.functions {
        out.csv(format!("spiral-{}-analytic.csv", func.name()), level_to_csv(analytic));
        if let Some(f) = spline {
            out.csv(format!("spiral-{}-spline.csv", func.name()), level_to_csv(f));
        }
    }
    out.svg(
        "spiral.svg",
        Plot::default()
            .polyline("polygon", report.polygon.vertices())
            .spline(&curve_of(&report.polygon), PLOT_SAMPLES, false)
            .render(),
    );

    let mut s = Summary::default();
    for c in &report.comparisons {
        let n = |sig: &Option<floatspline::metrics::ShapeSignature>| sig.as_ref().map_or(0, |x| x.events.len());
        s.line(format!(
            "{:<10} equivalent {:<5} analytic events {:>3}, spline events {:>3}",
            c.function.name(),
            c.equivalent,
            n(&c.analytic),
            n(&c.spline)
        ));
    }
    s.line(format!("all equivalent: {}", report.all_equivalent()));
    Ok((out, s))
}

#[derive(Debug, Args)]
pub struct TypicalArgs {
    #[arg(long, default_value_t = 1.0)]
    pub l0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Turning angle, degrees.
    #[arg(long, default_value_t = 30.0)]
    pub theta: f64,
    /// Torsion angle, degrees; nonzero gives a space curve.
    #[arg(long, default_value_t = 0.0)]
    pub phi: f64,
    #[arg(long, default_value_t = 12)]
    pub count: usize,
    #[arg(long, default_value_t = 9)]
    pub degree: usize,
}

pub fn typical(a: &TypicalArgs, g: &Global) -> CommandResult {
    let mut params = MineurFarinParams::planar(a.l0, a.q, a.theta.to_radians(), a.count);
    if a.phi != 0.0 {
        params.phi = a.phi.to_radians();
        params.start = Point::new3(0.0, 0.0, 0.0);
        params.start_dir = Point::new3(1.0, 0.0, 0.0);
    }
    let report = typical_curve(&params, a.degree, samples(g, DEFAULT_SAMPLES_PER_SEGMENT)?)?;

    let mut out = Outputs::default();
    out.json("typical.json", &report);
    out.polygon("typical-polygon.json", polygon_to_json(&report.polygon));
    out.csv("typical.csv", profile_to_csv(&report.curvature.profile));
    out.svg(
        "typical.svg",
        Plot::default()
            .polyline("polygon", report.polygon.vertices())
            .spline(&curve_of(&report.polygon), PLOT_SAMPLES, true)
            .render(),
    );

    let mut s = Summary::default();
    let c = &report.curvature;
    if c.relative_spread < 1e-6 {
        s.line(format!("curvature constant to relative spread {:.3e}", c.relative_spread));
    } else {
        s.line(format!("curvature extrema {}, monotone {}, relative spread {:.3e}", c.signature.extrema(), c.monotone, c.relative_spread));
    }
    s.line(format!("harmonic polygon: {}", report.harmonicity.verdict.pass));
    for r in &report.harmonicity.verdict.reasons {
        s.line(format!("  {r}"));
    }
    Ok((out, s))
}

fn parse_target(text: &str, which: End) -> Result<EndTarget, CliError> {
    let bad = || usage(format!("target must look like \"x,y;tx,ty\" or \"x,y,z;tx,ty,tz\", got {text:?}"));
    let (p, t) = text.split_once(';').ok_or_else(bad)?;
    let coords = |s: &str| -> Result<Point, CliError> {
        let v: Vec<f64> = s.split(',').map(|c| c.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        Ok(Point::from_slice(&v)?)
    };
    Ok(EndTarget::new(coords(p)?, coords(t)?, which)?)
}

#[derive(Debug, Args)]
pub struct PositionArgs {
    /// Float polygon JSON.
    #[arg(long)]
    pub input: PathBuf,
    /// Start target as "x,y;tx,ty".
    #[arg(long)]
    pub target_start: Option<String>,
    /// End target as "x,y;tx,ty".
    #[arg(long)]
    pub target_end: Option<String>,
    /// Absolute position tolerance; defaults to 1e-9 times the polygon diameter.
    #[arg(long)]
    pub tol_pos: Option<f64>,
    /// Tangent angle tolerance, radians.
    #[arg(long, default_value_t = DEFAULT_TOL_ANGLE)]
    pub tol_ang: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Skip interior fairing between corrections.
    #[arg(long)]
    pub no_fair: bool,
    /// Fraction of each correction applied.
    #[arg(long, default_value_t = 1.0)]
    pub damping: f64,
    /// Shape requirement on the result polygon.
    #[arg(long, value_enum, default_value = "monotone")]
    pub shape: Shape,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    /// One monotone run of discrete curvature, no bending reversals.
    Monotone,
    /// No bending reversals; curvature may vary freely.
    Convex,
    /// End targets only.
    Any,
}

impl Shape {
    fn spec(self) -> HarmonicitySpec {
        match self {
            Shape::Monotone => HarmonicitySpec::monotone(),
            Shape::Convex => convex_spec(),
            Shape::Any => HarmonicitySpec {
                max_curvature_sign_changes: usize::MAX,
                max_turning_angle: std::f64::consts::PI,
                ..convex_spec()
            },
        }
    }
}

pub fn position(a: &PositionArgs, _g: &Global) -> CommandResult {
    let poly = read_polygon(&a.input)?;
    let mut targets = Vec::new();
    if let Some(t) = &a.target_start {
        targets.push(parse_target(t, End::Start)?);
    }
    if let Some(t) = &a.target_end {
        targets.push(parse_target(t, End::End)?);
    }
    if targets.is_empty() {
        return Err(usage("give --target-start, --target-end or both"));
    }
    let opts = PositioningOptions {
        tol_pos: a.tol_pos.map(|t| positive("tol-pos", t)).transpose()?,
        tol_ang: positive("tol-ang", a.tol_ang)?,
        max_iter: a.max_iter,
        fair: !a.no_fair,
        damping: a.damping,
        spec: a.shape.spec(),
        ..PositioningOptions::default()
    };
    let (moved, report) = position_endpoints(&poly, &targets, &opts)?;

    let mut out = Outputs::default();
    out.json("position.json", &report);
    out.polygon("positioned.json", polygon_to_json(&moved));
    out.svg(
        "position.svg",
        Plot::default()
            .polyline("reference", poly.vertices())
            .polyline("polygon", moved.vertices())
            .spline(&curve_of(&moved), PLOT_SAMPLES, false)
            .render(),
    );

    let mut s = Summary::default();
    s.line(format!("converged {} after {} iterations", report.converged, report.iterations));
    for e in &report.ends {
        s.line(format!("{:?}: offset {:.3e}, angle {:.3e}", e.which_end, e.offset, e.angle));
    }
    s.line(format!("harmonic polygon: {}", report.harmonicity.pass));
    if !report.converged {
        let ends_ok = report.ends.iter().all(|e| e.offset <= report.tol_pos && e.angle <= report.tol_ang);
        s.failure = Some(if ends_ok {
            format!("ends reached but the polygon fails the {:?} shape requirement", a.shape).to_lowercase()
        } else {
            format!("positioning did not reach tolerance in {} iterations", report.iterations)
        });
    }
    Ok((out, s))
}

#[derive(Debug, Args)]
pub struct JoinArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// JSON array of bridge points placed between the two polygons.
    #[arg(long, conflicts_with = "bridge_count")]
    pub bridge: Option<PathBuf>,
    /// Generate this many bridge points with the default Hermite heuristic.
    #[arg(long)]
    pub bridge_count: Option<usize>,
}

#[derive(Serialize)]
struct JoinReport {
    degree: usize,
    first_count: usize,
    bridge_count: usize,
    second_count: usize,
    bridge_source: &'static str,
    /// Largest relative jump of each derivative order over the junction knots.
    max_jump_by_order: Vec<f64>,
    junction_knots: Vec<f64>,
    smooth: bool,
}

pub fn join(a: &JoinArgs, _g: &Global) -> CommandResult {
    let (p, q) = (read_polygon(&a.first)?, read_polygon(&a.second)?);
    let (bridge, source) = match (&a.bridge, a.bridge_count) {
        (Some(path), _) => (points_from_json(&read_text(path)?)?, "file"),
        (None, Some(k)) => (default_bridge(&p, &q, k)?, "heuristic"),
        (None, None) => (Vec::new(), "none"),
    };
    let joined = join_float_polygons(&p, &q, &bridge)?;
    let curve = curve_of(&joined);
    let n = joined.degree();

    // spans that involve vertices from both sides of the seam
    let (lo, hi) = curve.domain();
    let first = p.len() as f64;
    let knots: Vec<f64> = (0..)
        .map(|k| first + k as f64)
        .take_while(|&k| k <= first + (bridge.len() + n) as f64)
        .filter(|&k| k > lo && k < hi)
        .collect();
    let mut max_jump = vec![0.0; n];
    for &k in &knots {
        for (m, j) in max_jump.iter_mut().zip(junction_smoothness_check(&curve, k, n)?) {
            *m = f64::max(*m, j);
        }
    }
    let smooth = max_jump[..n - 1].iter().all(|&j| j < 1e-8);
    let report = JoinReport {
        degree: n,
        first_count: p.len(),
        bridge_count: bridge.len(),
        second_count: q.len(),
        bridge_source: source,
        max_jump_by_order: max_jump,
        junction_knots: knots,
        smooth,
    };

    let mut out = Outputs::default();
    out.json("join.json", &report);
    out.polygon("joined.json", polygon_to_json(&joined));
    out.svg(
        "join.svg",
        Plot::default().polyline("polygon", joined.vertices()).spline(&curve, PLOT_SAMPLES, false).render(),
    );

    let mut s = Summary::default();
    s.line(format!("joined {} + {} + {} vertices at degree {n}", p.len(), bridge.len(), q.len()));
    for (r, j) in report.max_jump_by_order.iter().enumerate() {
        s.line(format!("order {:>2}: max relative jump {j:.3e}", r + 1));
    }
    if !smooth {
        s.failure = Some(format!("derivative jumps below order {n} exceed 1e-8"));
    }
    Ok((out, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Clamped,
    Float,
    Segments,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Polygon JSON.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub to: Target,
    /// Convert back and fail if the round trip moves a vertex by more than
    /// 1e-9 times the polygon radius.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Serialize)]
struct ConvertSummary {
    from: &'static str,
    to: &'static str,
    vertex_count: usize,
    conversion: Option<floatspline::convert::ConversionReport>,
    round_trip_error: Option<f64>,
    round_trip_bound: Option<f64>,
}

pub fn convert(a: &ConvertArgs, _g: &Global) -> CommandResult {
    let poly = read_polygon(&a.input)?;
    let from = poly.format().name();
    let radius = 0.5 * poly.diameter();
    let mut out = Outputs::default();
    let mut s = Summary::default();
    let vertex_gap = |x: &ControlPolygon, y: &ControlPolygon| {
        x.vertices().iter().zip(y.vertices()).map(|(p, q)| p.distance(q)).fold(0.0, f64::max)
    };

    let (to, count, conversion, round_trip) = match a.to {
        Target::Clamped => {
            let (c, rep) = if poly.is_float() { to_clamped(&poly)? } else { return Err(usage("input is already clamped")) };
            let back = a.verify.then(|| to_float(&c)).transpose()?.map(|(b, _)| vertex_gap(&b, &poly));
            out.polygon("converted.json", polygon_to_json(&c));
            ("clamped", c.len(), Some(rep), back)
        }
        Target::Float => {
            let (f, rep) = if poly.is_float() { return Err(usage("input is already float")) } else { to_float(&poly)? };
            let back = a.verify.then(|| to_clamped(&f)).transpose()?.map(|(b, _)| vertex_gap(&b, &poly));
            out.polygon("converted.json", polygon_to_json(&f));
            ("float", f.len(), Some(rep), back)
        }
        Target::Segments => {
            let segs = extract_bezier_segments(&curve_of(&poly))?;
            let text = format!("[\n{}\n]", segs.iter().map(polygon_to_json).collect::<Vec<_>>().join(",\n"));
            out.polygon("segments.json", text);
            ("segments", segs.len(), None, None)
        }
    };
    let bound = 1e-9 * radius.max(f64::MIN_POSITIVE);
    out.json(
        "convert.json",
        &ConvertSummary {
            from,
            to,
            vertex_count: count,
            conversion,
            round_trip_error: round_trip,
            round_trip_bound: round_trip.map(|_| bound),
        },
    );
    s.line(format!("{from} -> {to}: {count} {}", if to == "segments" { "segments" } else { "vertices" }));
    if let Some(e) = round_trip {
        s.line(format!("round trip error {e:.3e} (bound {bound:.1e})"));
        if e.is_nan() || e >= bound {
            s.failure = Some(format!("round trip error {e:.3e} exceeds {bound:.1e}"));
        }
    }
    Ok((out, s))
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Number of random polygons.
    #[arg(long, default_value_t = 500)]
    pub cases: usize,
    #[arg(long, default_value_t = 2)]
    pub min_degree: usize,
    #[arg(long, default_value_t = 10)]
    pub max_degree: usize,
}

#[derive(Serialize)]
struct CheckReport {
    seed: u64,
    cases: usize,
    round_trip_worst: f64,
    round_trip_bound: f64,
    round_trip_failures: usize,
    pointwise_worst: f64,
    pointwise_bound: f64,
    segment_worst: f64,
    segment_bound: f64,
    pass: bool,
}

/// Random polygons in the square of half-width `R` = 10.
pub fn check(a: &CheckArgs, g: &Global) -> CommandResult {
    if a.min_degree < 1 || a.min_degree > a.max_degree {
        return Err(usage("need 1 <= --min-degree <= --max-degree"));
    }
    let r = 10.0;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let (mut round, mut fails, mut pointwise, mut segment) = (0.0f64, 0, 0.0f64, 0.0f64);
    for _ in 0..a.cases {
        let degree = rng.gen_range(a.min_degree..=a.max_degree);
        let count = rng.gen_range(5.max(degree + 1)..=40.max(degree + 1));
        let pts: Vec<Point> = (0..count).map(|_| Point::new2(rng.gen_range(-r..r), rng.gen_range(-r..r))).collect();
        let poly = make_float_polygon(pts, degree)?;
        let (clamped, _) = to_clamped(&poly)?;
        let (back, _) = to_float(&clamped)?;
        let e = back.vertices().iter().zip(poly.vertices()).map(|(p, q)| p.distance(q)).fold(0.0, f64::max);
        fails += usize::from(e >= 1e-9 * r);
        round = round.max(e);

        let (c0, c1) = (curve_of(&poly), curve_of(&clamped));
        let segs = extract_bezier_segments(&c0)?;
        let (lo, hi) = c0.domain();
        for _ in 0..4 {
            let t = rng.gen_range(lo..=hi);
            let p = de_boor_point(&c0, t)?;
            pointwise = pointwise.max(p.distance(&de_boor_point(&c1, t)?));
            let k = ((t - lo).floor() as usize).min(segs.len() - 1);
            let (sa, sb) = segs[k].knots().domain();
            let seg = floatspline::BSplineCurve::new(KnotVector::bezier(degree, sa, sb)?, segs[k].vertices().to_vec())?;
            segment = segment.max(p.distance(&de_boor_point(&seg, t)?));
        }
    }
    let report = CheckReport {
        seed: g.seed,
        cases: a.cases,
        round_trip_worst: round,
        round_trip_bound: 1e-9 * r,
        round_trip_failures: fails,
        pointwise_worst: pointwise,
        pointwise_bound: 1e-13 * r,
        segment_worst: segment,
        segment_bound: 1e-12 * r,
        pass: fails == 0 && pointwise < 1e-13 * r && segment < 1e-12 * r,
    };
    let mut out = Outputs::default();
    out.json("check.json", &report);

    let mut s = Summary::default();
    s.line(format!("round trip: worst {round:.3e}, {fails} of {} over {:.0e}", a.cases, 1e-9 * r));
    s.line(format!("float vs clamped pointwise: worst {pointwise:.3e}"));
    s.line(format!("spline vs Bezier segment: worst {segment:.3e}"));
    if !report.pass {
        s.failure = Some("conversion invariants violated".into());
    }
    Ok((out, s))
}
