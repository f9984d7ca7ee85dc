//! Presentation-only plots, projected onto the xy plane.

use std::fmt::Write;

use floatspline::eval::CurveEvaluator;
use floatspline::{BSplineCurve, Point};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;

struct Layer {
    class: &'static str,
    paths: Vec<Vec<(f64, f64)>>,
}

#[derive(Default)]
pub struct Plot {
    layers: Vec<Layer>,
}

impl Plot {
    pub fn polyline(&mut self, class: &'static str, points: &[Point]) -> &mut Self {
        self.layers.push(Layer { class, paths: vec![points.iter().map(|p| (p.x(), p.y())).collect()] });
        self
    }

    /// Curve trace, evolute and curvature comb of a spline.
    pub fn spline(&mut self, curve: &BSplineCurve, samples: usize, evolute: bool) -> &mut Self {
        let ev = CurveEvaluator::new(curve);
        let (a, b) = ev.domain();
        let ts: Vec<f64> = (0..samples).map(|i| a + (b - a) * i as f64 / (samples - 1) as f64).collect();
        let trace: Vec<Point> = ts.iter().filter_map(|&t| ev.point(t).ok()).collect();
        let extent = bounds(trace.iter().map(|p| (p.x(), p.y()))).map_or(1.0, |(x0, y0, x1, y1)| (x1 - x0).max(y1 - y0));

        let frames: Vec<_> = ts.iter().filter_map(|&t| ev.frenet(t).ok()).collect();
        let kmax = frames.iter().map(|f| f.curvature).fold(0.0, f64::max);
        if kmax > 0.0 {
            let scale = 0.15 * extent / kmax;
            let step = (frames.len() / 60).max(1);
            let teeth = frames
                .iter()
                .step_by(step)
                .filter_map(|f| f.normal.map(|n| vec![(f.point.x(), f.point.y()), xy(&(f.point - n * (f.curvature * scale)))]))
                .collect();
            self.layers.push(Layer { class: "comb", paths: teeth });
        }
        if evolute {
            let centre = trace.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.x(), acc.1 + p.y()));
            let centre = (centre.0 / trace.len().max(1) as f64, centre.1 / trace.len().max(1) as f64);
            // far-off evolute branches would swamp the view
            let near = |p: &Point| (p.x() - centre.0).hypot(p.y() - centre.1) <= 2.0 * extent;
            let mut paths = vec![Vec::new()];
            for &t in &ts {
                match ev.evolute_point(t) {
                    Ok(e) if near(&e) => paths.last_mut().expect("nonempty").push(xy(&e)),
                    _ => paths.push(Vec::new()),
                }
            }
            paths.retain(|p| p.len() > 1);
            self.layers.push(Layer { class: "evolute", paths });
        }
        self.polyline("curve", &trace)
    }

    pub fn render(&self) -> String {
        let all = self.layers.iter().flat_map(|l| l.paths.iter().flatten().copied());
        let (x0, y0, x1, y1) = bounds(all).unwrap_or((0.0, 0.0, 1.0, 1.0));
        let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
        let k = (WIDTH - 2.0 * MARGIN) / span;
        let height = (y1 - y0) * k + 2.0 * MARGIN;
        let map = |(x, y): (f64, f64)| (MARGIN + (x - x0) * k, MARGIN + (y1 - y) * k);

        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.2}">"#
        )
        .unwrap();
        out.push_str(concat!(
            "<style>polyline{fill:none;stroke-width:1}",
            ".curve{stroke:#1f4e99;stroke-width:1.6}",
            ".polygon{stroke:#888;stroke-dasharray:4 3}",
            ".bezier{stroke:#b33;stroke-width:1.6}",
            ".evolute{stroke:#2a8a3a}",
            ".comb{stroke:#d9a400;stroke-width:0.6}",
            ".reference{stroke:#aaa;stroke-dasharray:2 2}</style>\n"
        ));
        for layer in &self.layers {
            writeln!(out, r#"<g class="{}">"#, layer.class).unwrap();
            for path in &layer.paths {
                out.push_str(r#"<polyline class=""#);
                out.push_str(layer.class);
                out.push_str(r#"" points=""#);
                for (i, &p) in path.iter().enumerate() {
                    let (x, y) = map(p);
                    if i > 0 {
                        out.push(' ');
                    }
                    write!(out, "{x:.3},{y:.3}").unwrap();
                }
                out.push_str("\"/>\n");
            }
            out.push_str("</g>\n");
        }
        out.push_str("</svg>\n");
        out
    }
}

fn xy(p: &Point) -> (f64, f64) {
    (p.x(), p.y())
}

fn bounds(points: impl Iterator<Item = (f64, f64)>) -> Option<(f64, f64, f64, f64)> {
    points.filter(|(x, y)| x.is_finite() && y.is_finite()).fold(None, |acc, (x, y)| {
        Some(match acc {
            None => (x, y, x, y),
            Some((a, b, c, d)) => (a.min(x), b.min(y), c.max(x), d.max(y)),
        })
    })
}
