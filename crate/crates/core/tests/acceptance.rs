//! Acceptance criteria, one line per check. Exits nonzero when any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use floatspline::constructors::SamplingSpec;
use floatspline::convert::{extract_bezier_segments, to_clamped, to_float};
use floatspline::eval::de_boor_point;
use floatspline::experiments::{
    circle_test, dodecagon_positioning, bezier_bspline_compare, perturb_test, single_segment_bpolygon, spiral_approx,
    DEFAULT_SAMPLES_PER_SEGMENT, SPIRAL_DEFAULT_SAMPLES,
};
use floatspline::metrics::discrete_geometry_of;
use floatspline::positioning::{apply_end_correction, join_float_polygons, junction_smoothness_check, measure_end_mismatch, End, EndTarget};
use floatspline::{curve_of, make_float_polygon, regular_polygon_vertices, BSplineCurve, ControlPolygon, Orientation, Point};

struct Outcome {
    failures: Vec<String>,
    count: usize,
}

impl Outcome {
    fn check(&mut self, id: &str, what: &str, pass: bool, detail: String, elapsed: Duration, limit: Duration) {
        let in_time = elapsed <= limit;
        let ok = pass && in_time;
        println!(
            "{} [{id}] {what}: {detail} ({:.2} s, limit {:.0} s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        );
        self.count += 1;
        if !ok {
            self.failures.push(format!("[{id}] {what}"));
        }
    }
}

/// Agreement to `digits` significant figures: relative error below half a
/// unit in the last kept figure.
fn sig_figs(value: f64, reference: f64, digits: i32) -> (bool, f64) {
    let rel = ((value - reference) / reference).abs();
    (rel < 0.5 * 10f64.powi(1 - digits), rel)
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn circle_bspline(out: &mut Outcome) {
    for (degree, reference) in [(3, 8.33333e-1), (5, 1.11371e-3), (7, 7.85284e-6), (9, 5.92221e-8)] {
        let t = Instant::now();
        let r = circle_test(degree, None, 10.0, DEFAULT_SAMPLES_PER_SEGMENT).unwrap();
        let (ok, rel) = sig_figs(r.bspline.deviation, reference, 3);
        out.check(
            "1",
            &format!("B-spline circle deviation, degree {degree}"),
            ok,
            format!("{:.6e} vs {reference:.5e}, rel {rel:.2e}", r.bspline.deviation),
            t.elapsed(),
            secs(2),
        );
    }
}

fn circle_bezier(out: &mut Outcome) {
    let t = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for (degree, reference) in [(3, 8.17283e-1), (5, 8.06272e-2), (7, 4.65855e-2), (9, 3.19524e-2)] {
        let r = circle_test(degree, None, 10.0, DEFAULT_SAMPLES_PER_SEGMENT).unwrap();
        let (pass, rel) = sig_figs(r.bezier.deviation, reference, 2);
        ok &= pass;
        details.push(format!(
            "n={degree}: {:.6e} vs {reference:.5e} rel {rel:.1e} (radius-{} variant {:.4e})",
            r.bezier.deviation, r.radius, r.bezier_on_radius.deviation
        ));
    }
    out.check("2", "Bezier circle deviation", ok, details.join("; "), t.elapsed() / 4, secs(2));
}

fn single_segment_polygon(out: &mut Outcome) {
    let t = Instant::now();
    let shape = single_segment_bpolygon(10.0).unwrap();
    let legs = [0.518838, 0.519949, 0.520746, 0.521227, 0.521387];
    let angles = [0.0653566, 0.0654361, 0.0654898, 0.0655169];
    let leg_err = legs.iter().zip(&shape.leg_lengths).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let ang_err = angles.iter().zip(&shape.angles).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    out.check(
        "3",
        "single-segment B-polygon legs and angles",
        leg_err <= 5e-6 && ang_err <= 5e-6,
        format!("max leg error {leg_err:.1e}, max angle error {ang_err:.1e} (5 decimals)"),
        t.elapsed(),
        secs(2),
    );
}

fn perturbation(out: &mut Outcome) {
    let t = Instant::now();
    let r = perturb_test(DEFAULT_SAMPLES_PER_SEGMENT).unwrap();
    let (base_ok, base_rel) = sig_figs(r.baseline_deviation, 5.92221e-8, 2);
    let (ok, rel) = sig_figs(r.perturbed_deviation, 3.06354e-1, 2);
    out.check(
        "4",
        "rounding one clamped vertex",
        base_ok && ok && r.amplification > 1e3,
        format!(
            "deviation {:.5e} -> {:.5e} (rel {base_rel:.1e}, {rel:.1e}), amplification {:.3e}, first float vertex {:?}",
            r.baseline_deviation, r.perturbed_deviation, r.amplification, r.float_after[0]
        ),
        t.elapsed(),
        secs(2),
    );
}

fn curvature_monotonicity(out: &mut Outcome) {
    let t = Instant::now();
    let r = bezier_bspline_compare(2.0, PI / 2.0, 5, DEFAULT_SAMPLES_PER_SEGMENT).unwrap();
    let bez = r.bezier.signature.extrema();
    let bsp = r.bspline.signature.extrema();
    out.check(
        "5",
        "Mineur-Farin q=2, 90 degrees: curvature monotonicity",
        bez >= 1 && bsp == 0,
        format!("Bezier curvature extrema {bez}, B-spline curvature extrema {bsp}"),
        t.elapsed(),
        secs(1),
    );
}

fn spiral(out: &mut Outcome) {
    let t = Instant::now();
    let r = spiral_approx(8, SamplingSpec { s0: 0.0, h: 1.0, count: 20 }, SPIRAL_DEFAULT_SAMPLES).unwrap();
    let elapsed = t.elapsed();
    let detail = r
        .comparisons
        .iter()
        .map(|c| {
            let n = |s: &Option<floatspline::metrics::ShapeSignature>| s.as_ref().map_or(0, |s| s.events.len());
            format!("{} {} ({} vs {} events)", c.function.name(), c.equivalent, n(&c.analytic), n(&c.spline))
        })
        .collect::<Vec<_>>()
        .join(", ");
    out.check("6", "conical spiral shape equivalence, degree 8, 20 points", r.all_equivalent(), detail, elapsed, secs(2));
}

fn random_polygon(rng: &mut ChaCha8Rng, degree: usize, count: usize, r: f64) -> ControlPolygon {
    let pts = (0..count).map(|_| Point::new2(rng.gen_range(-r..r), rng.gen_range(-r..r))).collect();
    make_float_polygon(pts, degree).unwrap()
}

fn cox_de_boor(curve: &BSplineCurve, t: f64) -> Point {
    fn basis(k: &[f64], i: usize, p: usize, t: f64, last: usize) -> f64 {
        if p == 0 {
            return if (k[i] <= t && t < k[i + 1]) || (i == last && t == k[i + 1]) { 1.0 } else { 0.0 };
        }
        let mut v = 0.0;
        if k[i + p] > k[i] {
            v += (t - k[i]) / (k[i + p] - k[i]) * basis(k, i, p - 1, t, last);
        }
        if k[i + p + 1] > k[i + 1] {
            v += (k[i + p + 1] - t) / (k[i + p + 1] - k[i + 1]) * basis(k, i + 1, p - 1, t, last);
        }
        v
    }
    let k = curve.knots().knots();
    let last = curve.points().len() - 1;
    curve
        .points()
        .iter()
        .enumerate()
        .fold(Point::new2(0.0, 0.0), |acc, (i, q)| acc + *q * basis(k, i, curve.degree(), t, last))
}

fn bernstein(poly: &ControlPolygon, t: f64) -> Point {
    let (a, b) = poly.knots().domain();
    let u = (t - a) / (b - a);
    let n = poly.degree();
    let mut binom = 1.0;
    let mut acc = Point::new2(0.0, 0.0);
    for (i, p) in poly.vertices().iter().enumerate() {
        acc += *p * (binom * u.powi(i as i32) * (1.0 - u).powi((n - i) as i32));
        binom = binom * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn conversions(out: &mut Outcome) {
    let t = Instant::now();
    let r = 10.0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_round = 0.0f64;
    let mut worst_round_case = (0, 0);
    let mut worst_clamp = 0.0f64;
    let mut worst_by_degree = [0.0f64; 11];
    let mut over = 0;
    for _ in 0..500 {
        let degree = rng.gen_range(2..=10);
        let count = rng.gen_range(5.max(degree + 1)..=40);
        let poly = random_polygon(&mut rng, degree, count, r);
        let (clamped, _) = to_clamped(&poly).unwrap();
        let (back, _) = to_float(&clamped).unwrap();
        let e = back.vertices().iter().zip(poly.vertices()).map(|(p, q)| p.distance(q)).fold(0.0, f64::max);
        worst_by_degree[degree] = worst_by_degree[degree].max(e);
        over += usize::from(e >= 1e-9 * r);
        if e > worst_round {
            worst_round = e;
            worst_round_case = (degree, count);
        }
        let (c0, c1) = (curve_of(&poly), curve_of(&clamped));
        let (a, b) = c0.domain();
        for _ in 0..4 {
            let x = rng.gen_range(a..=b);
            worst_clamp = worst_clamp.max(de_boor_point(&c0, x).unwrap().distance(&de_boor_point(&c1, x).unwrap()));
        }
    }
    let mid = t.elapsed();
    out.check(
        "7a",
        "float->clamped->float round trip, 500 random polygons",
        worst_round < 1e-9 * r,
        format!(
            "worst {worst_round:.2e} (degree {}, {} vertices), bound {:.0e}, {over} of 500 over; worst by degree 2..10: {}",
            worst_round_case.0,
            worst_round_case.1,
            1e-9 * r,
            worst_by_degree[2..].iter().map(|e| format!("{e:.0e}")).collect::<Vec<_>>().join(" ")
        ),
        mid,
        secs(30),
    );
    out.check(
        "7b",
        "float->clamped pointwise identity",
        worst_clamp < 1e-13 * r,
        format!("worst {worst_clamp:.2e}, bound {:.0e}", 1e-13 * r),
        Duration::ZERO,
        secs(30),
    );

    let t = Instant::now();
    let mut worst_basis = 0.0f64;
    let mut worst_bern = 0.0f64;
    for _ in 0..1000 {
        let degree = rng.gen_range(1..=10);
        let count = rng.gen_range(degree + 1..=degree + 12);
        let poly = random_polygon(&mut rng, degree, count, r);
        let curve = curve_of(&poly);
        let (a, b) = curve.domain();
        let x = rng.gen_range(a..=b);
        let p = de_boor_point(&curve, x).unwrap();
        worst_basis = worst_basis.max(p.distance(&cox_de_boor(&curve, x)));
        let segs = extract_bezier_segments(&curve).unwrap();
        let seg = segs
            .iter()
            .find(|s| {
                let (lo, hi) = s.knots().domain();
                lo <= x && x <= hi
            })
            .unwrap();
        worst_bern = worst_bern.max(p.distance(&bernstein(seg, x)));
    }
    out.check(
        "7c",
        "de Boor vs basis sum vs Bernstein, 1000 random evaluations",
        worst_basis < 1e-12 * r && worst_bern < 1e-12 * r,
        format!("basis {worst_basis:.2e}, Bernstein {worst_bern:.2e}, bound {:.0e}", 1e-12 * r),
        mid + t.elapsed(),
        secs(30),
    );
}

fn positioning(out: &mut Outcome) {
    let t = Instant::now();
    let r = 10.0;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut worst_d, mut worst_a) = (0.0f64, 0.0f64);
    let mut runs = 0;
    while runs < 100 {
        let degree = rng.gen_range(2..=9);
        let count = rng.gen_range(2 * degree..=2 * degree + 10);
        let mut poly = random_polygon(&mut rng, degree, count, r);
        let targets: Vec<EndTarget> = [End::Start, End::End]
            .into_iter()
            .map(|which| {
                let a: f64 = rng.gen_range(-PI..PI);
                EndTarget::new(Point::new2(rng.gen_range(-r..r), rng.gen_range(-r..r)), Point::new2(a.cos(), a.sin()), which).unwrap()
            })
            .collect();
        let Ok(ms) = targets.iter().map(|tg| measure_end_mismatch(&poly, tg)).collect::<Result<Vec<_>, _>>() else {
            continue;
        };
        for m in &ms {
            poly = apply_end_correction(&poly, m, degree).unwrap();
        }
        for tg in &targets {
            let m = measure_end_mismatch(&poly, tg).unwrap();
            worst_d = worst_d.max(m.offset.norm());
            worst_a = worst_a.max(m.angle.abs());
        }
        runs += 1;
    }
    let exact = worst_d < 1e-12 * r && worst_a < 1e-12;
    let task = dodecagon_positioning(20, 9, r, true).unwrap();
    let on_circle = task.end_radius_errors.iter().all(|&e| e < 1e-9);
    out.check(
        "8",
        "one-pass end positioning and dodecagon-to-circle task",
        exact && task.report.converged && task.report.iterations <= 100 && on_circle,
        format!(
            "random: worst |d| {worst_d:.2e}, |alpha| {worst_a:.2e}; task: converged {} in {} iterations, end radius errors {:.1e}/{:.1e}, harmonicity {}",
            task.report.converged, task.report.iterations, task.end_radius_errors[0], task.end_radius_errors[1], task.report.harmonicity.pass
        ),
        t.elapsed(),
        secs(10),
    );
}

fn composites(out: &mut Outcome) {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut worst_low, mut least_top) = (0.0f64, f64::MAX);
    for _ in 0..60 {
        let degree = rng.gen_range(2..=9);
        let (ca, cb) = (rng.gen_range(degree + 1..=degree + 8), rng.gen_range(degree + 1..=degree + 8));
        let a = random_polygon(&mut rng, degree, ca, 10.0);
        let b = random_polygon(&mut rng, degree, cb, 10.0);
        let bridge: Vec<Point> = (0..rng.gen_range(0..=3)).map(|_| Point::new2(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))).collect();
        let curve = curve_of(&join_float_polygons(&a, &b, &bridge).unwrap());
        let (lo, hi) = curve.domain();
        let mut k = lo + 1.0;
        while k < hi {
            let jumps = junction_smoothness_check(&curve, k, degree).unwrap();
            worst_low = jumps[..degree - 1].iter().cloned().fold(worst_low, f64::max);
            least_top = least_top.min(jumps[degree - 1]);
            k += 1.0;
        }
    }
    out.check(
        "9",
        "composite smoothness of joined float polygons",
        worst_low < 1e-8 && least_top > 1e-6,
        format!("worst jump orders 1..n-1 {worst_low:.2e}; smallest order-n jump {least_top:.2e}"),
        t.elapsed(),
        secs(5),
    );
}

fn discrete_convergence(out: &mut Outcome) {
    let t = Instant::now();
    let r = 10.0;
    let errors: Vec<f64> = [12, 24, 48]
        .iter()
        .map(|&n| {
            let pts = regular_polygon_vertices(n, r, 0.0, Orientation::Ccw).unwrap();
            discrete_geometry_of(&pts)
                .unwrap()
                .curvatures()
                .into_iter()
                .map(|k| (k.unwrap() - 1.0 / r).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    out.check(
        "10",
        "discrete curvature convergence on regular polygons",
        orders.iter().all(|&p| p >= 1.0),
        format!("errors {:.2e}, {:.2e}, {:.2e}; observed orders {:.3}, {:.3}", errors[0], errors[1], errors[2], orders[0], orders[1]),
        t.elapsed(),
        secs(1),
    );
}

fn main() {
    let mut out = Outcome { failures: Vec::new(), count: 0 };
    circle_bspline(&mut out);
    circle_bezier(&mut out);
    single_segment_polygon(&mut out);
    perturbation(&mut out);
    curvature_monotonicity(&mut out);
    spiral(&mut out);
    conversions(&mut out);
    positioning(&mut out);
    composites(&mut out);
    discrete_convergence(&mut out);
    println!("acceptance: {} of {} checks passed", out.count - out.failures.len(), out.count);
    if !out.failures.is_empty() {
        for f in &out.failures {
            println!("failed: {f}");
        }
        std::process::exit(1);
    }
}
