//! Text formats: polygon and signature JSON, profile and level CSV.
//!
//! JSON numbers use the shortest representation that parses back to the
//! same `f64`. CSV values are written with 15 significant digits.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::eval::CurvatureProfile;
use crate::geometry::ControlPolygon;
use crate::metrics::{SampledFunction, ShapeSignature};

fn json_error(e: serde_json::Error) -> Error {
    Error::InvalidArgument(format!("malformed JSON: {e}"))
}

/// `{"degree", "format", "dim", "points", "knots"?}`.
pub fn polygon_to_json(polygon: &ControlPolygon) -> String {
    serde_json::to_string_pretty(polygon).expect("polygons always serialize")
}

pub fn polygon_from_json(text: &str) -> Result<ControlPolygon> {
    serde_json::from_str(text).map_err(|e| {
        // validation failures surface through serde as custom messages
        Error::InvalidArgument(format!("invalid polygon: {e}"))
    })
}

pub fn signature_to_json(sig: &ShapeSignature) -> String {
    serde_json::to_string_pretty(sig).expect("signatures always serialize")
}

pub fn signature_from_json(text: &str) -> Result<ShapeSignature> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn points_from_json(text: &str) -> Result<Vec<crate::geometry::Point>> {
    serde_json::from_str(text).map_err(json_error)
}

fn num(x: f64) -> String {
    format!("{x:.14e}")
}

/// Header `t,s,kappa,tau`; `tau` is empty for planar profiles.
pub fn profile_to_csv(profile: &CurvatureProfile) -> String {
    let mut out = String::from("t,s,kappa,tau\n");
    for p in &profile.samples {
        let tau = p.tau.map(num).unwrap_or_default();
        writeln!(out, "{},{},{},{}", num(p.t), num(p.s), num(p.kappa), tau).expect("string write");
    }
    out
}

/// Header `s,f`.
pub fn level_to_csv(f: &SampledFunction) -> String {
    let mut out = String::from("s,f\n");
    for (s, v) in f.s.iter().zip(&f.f) {
        writeln!(out, "{},{}", num(*s), num(*v)).expect("string write");
    }
    out
}

/// Parses the `s,f` format back.
pub fn level_from_csv(text: &str) -> Result<SampledFunction> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("s,f") {
        return Err(Error::InvalidArgument("level CSV must start with the header s,f".into()));
    }
    let (mut s, mut f) = (Vec::new(), Vec::new());
    for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let mut cols = line.split(',');
        let mut next = || -> Result<f64> {
            cols.next()
                .and_then(|c| c.trim().parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("bad number on data line {}", i + 1)))
        };
        s.push(next()?);
        f.push(next()?);
    }
    SampledFunction::new(s, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::profile;
    use crate::geometry::{curve_of, make_float_polygon, regular_polygon_vertices, KnotVector, Orientation, Point};
    use crate::metrics::{EventKind, ShapeEvent};

    #[test]
    fn float_polygon_round_trip() {
        let pts = regular_polygon_vertices(12, 10.0, 0.1, Orientation::Ccw).unwrap();
        let p = make_float_polygon(pts, 9).unwrap();
        let text = polygon_to_json(&p);
        assert!(!text.contains("knots"));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["format"], "float");
        assert_eq!(v["dim"], 2);
        assert_eq!(v["degree"], 9);
        assert_eq!(polygon_from_json(&text).unwrap(), p);
    }

    #[test]
    fn clamped_polygon_round_trip() {
        let pts = vec![Point::new3(0.0, 0.0, 0.0), Point::new3(1.0, 2.0, 0.5), Point::new3(3.0, 1.0, 1.0 / 3.0)];
        let p = ControlPolygon::clamped(pts, KnotVector::bezier(2, 0.0, 1.0).unwrap()).unwrap();
        let text = polygon_to_json(&p);
        assert_eq!(polygon_from_json(&text).unwrap(), p);
    }

    #[test]
    fn polygon_validation_errors() {
        for bad in [
            r#"{"degree":3,"format":"float","dim":2,"points":[[0,0],[1,0],[2,1]]}"#,
            r#"{"degree":1,"format":"float","dim":2,"points":[[0,0],[1,0,3]]}"#,
            r#"{"degree":1,"format":"clamped","dim":2,"points":[[0,0],[1,0]]}"#,
            r#"{"degree":1,"format":"bent","dim":2,"points":[[0,0],[1,0]]}"#,
            r#"{"degree":1,"format":"float","dim":4,"points":[[0,0],[1,0]]}"#,
            "not json",
        ] {
            assert!(matches!(polygon_from_json(bad), Err(Error::InvalidArgument(_))), "{bad}");
        }
    }

    #[test]
    fn signature_format() {
        let sig = ShapeSignature { events: vec![ShapeEvent { kind: EventKind::Max, s: 0.5 }, ShapeEvent { kind: EventKind::Inflection, s: 1.25 }] };
        let text = signature_to_json(&sig);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["events"][0]["kind"], "max");
        assert_eq!(v["events"][1]["kind"], "inflection");
        assert_eq!(signature_from_json(&text).unwrap(), sig);
    }

    #[test]
    fn profile_csv_layout() {
        let pts = regular_polygon_vertices(6, 1.0, 0.0, Orientation::Ccw).unwrap();
        let prof = profile(&curve_of(&make_float_polygon(pts, 3).unwrap()), 16).unwrap();
        let text = profile_to_csv(&prof);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,s,kappa,tau");
        assert_eq!(lines.len(), 17);
        assert!(lines[1].ends_with(','));
        let t: f64 = lines[1].split(',').next().unwrap().parse().unwrap();
        assert_eq!(t, 3.0);
        // 15 significant digits
        assert_eq!(lines[1].split(',').next().unwrap(), "3.00000000000000e0");
    }

    #[test]
    fn level_csv_round_trip() {
        let f = SampledFunction::new(vec![0.0, 0.5, 1.5], vec![1.0, -2.0, 1.0 / 3.0]).unwrap();
        let back = level_from_csv(&level_to_csv(&f)).unwrap();
        assert_eq!(back.s, f.s);
        assert!((back.f[2] - 1.0 / 3.0).abs() < 1e-14);
    }
}
