//! Value types shared by the whole kernel: points, knot vectors, control
//! polygons and B-spline curves.
//!
//! A control polygon comes in one of two formats. The *float* format is a
//! polygon over the unclamped uniform knot vector `0, 1, ..., N + n`; the
//! knots are implied and never stored, so a float polygon is just a degree
//! and a vertex list. The *clamped* format carries an explicit knot vector
//! whose end knots have multiplicity `n + 1`, so the terminal vertices lie on
//! the curve.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Ambient dimension of a point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn count(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    pub fn from_count(n: usize) -> Result<Self> {
        match n {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            _ => invalid(format!("dimension must be 2 or 3, got {n}")),
        }
    }
}

/// A point (or free vector) in the plane or in space.
///
/// Planar points keep `z == 0`. Arithmetic between a 2D and a 3D value
/// yields a 3D value.
#[derive(Clone, Copy, PartialEq)]
pub struct Point {
    c: [f64; 3],
    dim: Dim,
}

/// Vectors share the point representation.
pub type Vector = Point;

impl Point {
    pub const fn new2(x: f64, y: f64) -> Self {
        Point { c: [x, y, 0.0], dim: Dim::Two }
    }

    pub const fn new3(x: f64, y: f64, z: f64) -> Self {
        Point { c: [x, y, z], dim: Dim::Three }
    }

    pub const fn zero(dim: Dim) -> Self {
        Point { c: [0.0; 3], dim }
    }

    /// Builds a point from a 2- or 3-element coordinate slice.
    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        let p = match *coords {
            [x, y] => Point::new2(x, y),
            [x, y, z] => Point::new3(x, y, z),
            _ => return invalid(format!("a point needs 2 or 3 coordinates, got {}", coords.len())),
        };
        if !p.is_finite() {
            return invalid("point coordinates must be finite");
        }
        Ok(p)
    }

    pub fn x(&self) -> f64 {
        self.c[0]
    }

    pub fn y(&self) -> f64 {
        self.c[1]
    }

    pub fn z(&self) -> f64 {
        self.c[2]
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Coordinates truncated to the point's dimension.
    pub fn coords(&self) -> &[f64] {
        &self.c[..self.dim.count()]
    }

    /// The same coordinates viewed as a 3D point.
    pub fn to_3d(self) -> Self {
        Point { c: self.c, dim: Dim::Three }
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    pub fn dot(&self, o: &Point) -> f64 {
        self.c[0] * o.c[0] + self.c[1] * o.c[1] + self.c[2] * o.c[2]
    }

    /// Cross product. For planar inputs the result is the 3D vector
    /// `(0, 0, x1*y2 - y1*x2)`.
    pub fn cross(&self, o: &Point) -> Point {
        let [a1, a2, a3] = self.c;
        let [b1, b2, b3] = o.c;
        Point::new3(a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.c[0].hypot(self.c[1]).hypot(self.c[2])
    }

    pub fn distance(&self, o: &Point) -> f64 {
        (*self - *o).norm()
    }

    /// Unit vector in the same direction, or `None` for a (near) zero vector.
    pub fn normalized(&self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| *self / n)
    }

    /// Affine combination `(1 - a) * self + a * o`.
    pub fn lerp(&self, o: &Point, a: f64) -> Point {
        *self * (1.0 - a) + *o * a
    }

    /// Rotation about the z axis (planar rotation for 2D points).
    pub fn rotate_z(&self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point {
            c: [c * self.c[0] - s * self.c[1], s * self.c[0] + c * self.c[1], self.c[2]],
            dim: self.dim,
        }
    }

    /// Rodrigues rotation about the unit `axis` through the origin.
    pub fn rotate_about(&self, axis: &Point, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        let v = *self;
        let r = v * c + axis.cross(&v) * s + *axis * (axis.dot(&v) * (1.0 - c));
        Point { c: r.c, dim: self.dim.max(axis.dim) }
    }

    fn zip(self, o: Point, f: impl Fn(f64, f64) -> f64) -> Point {
        Point {
            c: [f(self.c[0], o.c[0]), f(self.c[1], o.c[1]), f(self.c[2], o.c[2])],
            dim: self.dim.max(o.dim),
        }
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dim {
            Dim::Two => write!(f, "({}, {})", self.c[0], self.c[1]),
            Dim::Three => write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2]),
        }
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        self.zip(o, |a, b| a + b)
    }
}

impl AddAssign for Point {
    fn add_assign(&mut self, o: Point) {
        *self = *self + o;
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        self.zip(o, |a, b| a - b)
    }
}

impl SubAssign for Point {
    fn sub_assign(&mut self, o: Point) {
        *self = *self - o;
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point { c: self.c.map(|v| v * s), dim: self.dim }
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        p * self
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, s: f64) -> Point {
        Point { c: self.c.map(|v| v / s), dim: self.dim }
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        self * -1.0
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        Point::from_slice(&v).map_err(serde::de::Error::custom)
    }
}

/// Common dimension of a point collection.
pub fn common_dim(points: &[Point]) -> Result<Dim> {
    let first = match points.first() {
        Some(p) => p.dim(),
        None => return invalid("empty point list"),
    };
    for p in points {
        if p.dim() != first {
            return Err(Error::DimensionMismatch { expected: first.count(), found: p.dim().count() });
        }
        if !p.is_finite() {
            return invalid("point coordinates must be finite");
        }
    }
    Ok(first)
}

/// Largest distance between any two points of the set.
pub fn diameter(points: &[Point]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max(p.distance(q));
        }
    }
    d
}

/// Traversal direction of a regular polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

/// Vertices of a regular `n`-gon of circumradius `radius` centered at the
/// origin, starting at `start_angle` (radians) and stepping by `2π/n` in the
/// given orientation.
pub fn regular_polygon_vertices(
    n: usize,
    radius: f64,
    start_angle: f64,
    orientation: Orientation,
) -> Result<Vec<Point>> {
    if n < 3 {
        return invalid(format!("a regular polygon needs at least 3 vertices, got {n}"));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return invalid(format!("radius must be positive, got {radius}"));
    }
    let step = match orientation {
        Orientation::Ccw => 2.0 * PI / n as f64,
        Orientation::Cw => -2.0 * PI / n as f64,
    };
    Ok((0..n)
        .map(|k| {
            let a = start_angle + step * k as f64;
            Point::new2(radius * a.cos(), radius * a.sin())
        })
        .collect())
}

/// Nondecreasing knot sequence for a B-spline of a given degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotVector {
    knots: Vec<f64>,
    degree: usize,
}

impl KnotVector {
    pub fn new(knots: Vec<f64>, degree: usize) -> Result<Self> {
        if degree == 0 {
            return invalid("degree must be at least 1");
        }
        if knots.len() < 2 * (degree + 1) {
            return invalid(format!(
                "degree {degree} needs at least {} knots, got {}",
                2 * (degree + 1),
                knots.len()
            ));
        }
        if knots.iter().any(|k| !k.is_finite()) {
            return invalid("knots must be finite");
        }
        if knots.windows(2).any(|w| w[1] < w[0]) {
            return invalid("knots must be nondecreasing");
        }
        let kv = KnotVector { knots, degree };
        let (a, b) = kv.domain();
        if !(b > a) {
            return invalid("knot vector has an empty domain");
        }
        Ok(kv)
    }

    /// The implied knots `0, 1, ..., count + degree` of a float polygon.
    pub fn uniform_float(count: usize, degree: usize) -> Result<Self> {
        if count < degree + 1 {
            return invalid(format!("degree {degree} needs at least {} points, got {count}", degree + 1));
        }
        KnotVector::new((0..=count + degree).map(|k| k as f64).collect(), degree)
    }

    /// A clamped knot vector: end multiplicities `n + 1`, interior
    /// multiplicities at most `n`.
    pub fn clamped(knots: Vec<f64>, degree: usize) -> Result<Self> {
        let kv = KnotVector::new(knots, degree)?;
        if !kv.is_clamped() {
            return invalid("knot vector is not clamped (end multiplicity must be degree + 1, interior at most degree)");
        }
        Ok(kv)
    }

    /// Bézier knot vector `[a; n+1] ++ [b; n+1]`.
    pub fn bezier(degree: usize, a: f64, b: f64) -> Result<Self> {
        let mut k = vec![a; degree + 1];
        k.extend(std::iter::repeat_n(b, degree + 1));
        KnotVector::clamped(k, degree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    /// Number of control points this knot vector supports.
    pub fn point_count(&self) -> usize {
        self.knots.len() - self.degree - 1
    }

    /// Valid parameter interval `[t_n, t_N]`.
    pub fn domain(&self) -> (f64, f64) {
        (self.knots[self.degree], self.knots[self.point_count()])
    }

    pub fn multiplicity(&self, u: f64) -> usize {
        self.knots.iter().filter(|&&k| k == u).count()
    }

    pub fn is_uniform_float(&self) -> bool {
        self.knots.iter().enumerate().all(|(i, &k)| k == i as f64)
    }

    pub fn is_clamped(&self) -> bool {
        let n = self.degree;
        let (a, b) = self.domain();
        let k = &self.knots;
        let ends = k[..=n].iter().all(|&v| v == a) && k[k.len() - n - 1..].iter().all(|&v| v == b);
        ends && self.interior_knots().iter().all(|&(_, m)| m <= n)
    }

    /// Distinct knot values strictly inside the domain with multiplicities.
    pub fn interior_knots(&self) -> Vec<(f64, usize)> {
        let (a, b) = self.domain();
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &k in &self.knots {
            if k > a && k < b {
                match out.last_mut() {
                    Some((v, m)) if *v == k => *m += 1,
                    _ => out.push((k, 1)),
                }
            }
        }
        out
    }

    /// Index `k` with `t_k <= t < t_{k+1}` inside the domain; the right end
    /// of the domain maps to the last nonempty span.
    pub fn find_span(&self, t: f64) -> usize {
        let n = self.degree;
        let last = self.point_count() - 1;
        let (_, b) = self.domain();
        if t >= b {
            let mut k = last;
            while k > n && self.knots[k] >= b {
                k -= 1;
            }
            return k;
        }
        // upper_bound over knots[n..=last+1]
        let slice = &self.knots[n..=last + 1];
        let pos = slice.partition_point(|&k| k <= t);
        (n + pos - 1).clamp(n, last)
    }
}

/// Control-polygon format tag.
#[derive(Debug, Clone, PartialEq)]
pub enum PolygonFormat {
    /// Unclamped uniform knots `0..N+n`, implied.
    Float,
    /// Explicit clamped knots.
    Clamped(KnotVector),
}

impl PolygonFormat {
    pub fn name(&self) -> &'static str {
        match self {
            PolygonFormat::Float => "float",
            PolygonFormat::Clamped(_) => "clamped",
        }
    }
}

/// S-polygon (B-spline control polygon) or B-polygon (Bézier control
/// polygon, the single-span clamped case).
///
/// Serializes as `{"degree", "format", "dim", "points", "knots"}`, with
/// `knots` present only for clamped polygons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "PolygonRecord", try_from = "PolygonRecord")]
pub struct ControlPolygon {
    degree: usize,
    format: PolygonFormat,
    vertices: Vec<Point>,
    dim: Dim,
}

impl ControlPolygon {
    /// Float-format polygon; its curve lives on `[degree, count]`.
    pub fn float(vertices: Vec<Point>, degree: usize) -> Result<Self> {
        if degree == 0 {
            return invalid("degree must be at least 1");
        }
        if vertices.len() < degree + 1 {
            return invalid(format!(
                "degree {degree} needs at least {} vertices, got {}",
                degree + 1,
                vertices.len()
            ));
        }
        let dim = common_dim(&vertices)?;
        Ok(ControlPolygon { degree, format: PolygonFormat::Float, vertices, dim })
    }

    pub fn clamped(vertices: Vec<Point>, knots: KnotVector) -> Result<Self> {
        if !knots.is_clamped() {
            return invalid("clamped polygon requires a clamped knot vector");
        }
        if knots.point_count() != vertices.len() {
            return invalid(format!(
                "knot vector supports {} vertices, got {}",
                knots.point_count(),
                vertices.len()
            ));
        }
        let dim = common_dim(&vertices)?;
        Ok(ControlPolygon { degree: knots.degree(), format: PolygonFormat::Clamped(knots), vertices, dim })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn format(&self) -> &PolygonFormat {
        &self.format
    }

    pub fn is_float(&self) -> bool {
        matches!(self.format, PolygonFormat::Float)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Knot vector, explicit for clamped and implied for float polygons.
    pub fn knots(&self) -> KnotVector {
        match &self.format {
            PolygonFormat::Float => KnotVector::uniform_float(self.vertices.len(), self.degree)
                .expect("validated at construction"),
            PolygonFormat::Clamped(k) => k.clone(),
        }
    }

    /// Same format and degree with replaced vertices.
    pub fn with_vertices(&self, vertices: Vec<Point>) -> Result<Self> {
        match &self.format {
            PolygonFormat::Float => ControlPolygon::float(vertices, self.degree),
            PolygonFormat::Clamped(k) => ControlPolygon::clamped(vertices, k.clone()),
        }
    }

    /// Number of polynomial spans of the curve.
    pub fn segment_count(&self) -> usize {
        match &self.format {
            PolygonFormat::Float => self.vertices.len() - self.degree,
            PolygonFormat::Clamped(k) => k.interior_knots().len() + 1,
        }
    }

    /// Diameter of the vertex set.
    pub fn diameter(&self) -> f64 {
        diameter(&self.vertices)
    }

    /// Recovers the polygon from a curve whose knots are either the uniform
    /// float knots or a clamped vector.
    pub fn from_curve(curve: &BSplineCurve) -> Result<Self> {
        let k = curve.knots();
        if k.is_uniform_float() {
            ControlPolygon::float(curve.points().to_vec(), curve.degree())
        } else if k.is_clamped() {
            ControlPolygon::clamped(curve.points().to_vec(), k.clone())
        } else {
            invalid("curve knots are neither uniform-float nor clamped")
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonRecord {
    degree: usize,
    format: String,
    dim: usize,
    points: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    knots: Option<Vec<f64>>,
}

impl From<ControlPolygon> for PolygonRecord {
    fn from(p: ControlPolygon) -> Self {
        PolygonRecord {
            degree: p.degree,
            format: p.format.name().to_string(),
            dim: p.dim.count(),
            knots: match &p.format {
                PolygonFormat::Float => None,
                PolygonFormat::Clamped(k) => Some(k.knots().to_vec()),
            },
            points: p.vertices,
        }
    }
}

impl TryFrom<PolygonRecord> for ControlPolygon {
    type Error = Error;

    fn try_from(r: PolygonRecord) -> Result<Self> {
        let dim = Dim::from_count(r.dim)?;
        if let Some(p) = r.points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim.count(), found: p.dim().count() });
        }
        match (r.format.as_str(), r.knots) {
            ("float", None) => ControlPolygon::float(r.points, r.degree),
            ("float", Some(_)) => invalid("float polygons carry no knots"),
            ("clamped", Some(k)) => ControlPolygon::clamped(r.points, KnotVector::new(k, r.degree)?),
            ("clamped", None) => invalid("clamped polygon is missing its knots"),
            (other, _) => invalid(format!("unknown polygon format {other:?}")),
        }
    }
}

/// Float-format polygon over `points`.
pub fn make_float_polygon(points: Vec<Point>, degree: usize) -> Result<ControlPolygon> {
    ControlPolygon::float(points, degree)
}

/// Explicit B-spline curve of the polygon.
pub fn curve_of(polygon: &ControlPolygon) -> BSplineCurve {
    BSplineCurve {
        knots: polygon.knots(),
        points: polygon.vertices.clone(),
        dim: polygon.dim,
    }
}

/// B-spline curve with explicit knots.
#[derive(Debug, Clone, PartialEq)]
pub struct BSplineCurve {
    knots: KnotVector,
    points: Vec<Point>,
    dim: Dim,
}

impl BSplineCurve {
    pub fn new(knots: KnotVector, points: Vec<Point>) -> Result<Self> {
        if knots.point_count() != points.len() {
            return invalid(format!(
                "point count {} does not match knot count {} for degree {}",
                points.len(),
                knots.len(),
                knots.degree()
            ));
        }
        let dim = common_dim(&points)?;
        Ok(BSplineCurve { knots, points, dim })
    }

    pub fn degree(&self) -> usize {
        self.knots.degree()
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn domain(&self) -> (f64, f64) {
        self.knots.domain()
    }

    pub fn check_domain(&self, t: f64) -> Result<()> {
        let (start, end) = self.domain();
        if t.is_nan() || t < start || t > end {
            return Err(Error::Domain { t, start, end });
        }
        Ok(())
    }

    /// Distinct knot values in the closed domain, ends included.
    pub fn breakpoints(&self) -> Vec<f64> {
        let (a, b) = self.domain();
        let mut v = vec![a];
        v.extend(self.knots.interior_knots().into_iter().map(|(k, _)| k));
        v.push(b);
        v
    }

    /// The same geometric curve traversed backwards, with knots `-t`
    /// reversed.
    pub fn reversed(&self) -> BSplineCurve {
        let knots: Vec<f64> = self.knots.knots().iter().rev().map(|k| -k).collect();
        BSplineCurve {
            knots: KnotVector { knots, degree: self.degree() },
            points: self.points.iter().rev().copied().collect(),
            dim: self.dim,
        }
    }

    /// Same curve with the parameter mapped by `t -> scale * t + shift`
    /// (`scale > 0`).
    pub fn reparametrized(&self, scale: f64, shift: f64) -> BSplineCurve {
        let knots = self.knots.knots().iter().map(|k| scale * k + shift).collect();
        BSplineCurve {
            knots: KnotVector { knots, degree: self.degree() },
            points: self.points.clone(),
            dim: self.dim,
        }
    }

    pub(crate) fn from_parts_unchecked(knots: Vec<f64>, degree: usize, points: Vec<Point>, dim: Dim) -> Self {
        BSplineCurve { knots: KnotVector { knots, degree }, points, dim }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point, b: Point, tol: f64) -> bool {
        a.distance(&b) < tol
    }

    #[test]
    fn unit_square() {
        let v = regular_polygon_vertices(4, 1.0, 0.0, Orientation::Ccw).unwrap();
        let want = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (p, (x, y)) in v.iter().zip(want) {
            assert!(close(*p, Point::new2(x, y), 1e-15), "{p:?}");
        }
    }

    #[test]
    fn clockwise_dodecagon_from_225_degrees() {
        let v = regular_polygon_vertices(12, 10.0, 225f64.to_radians(), Orientation::Cw).unwrap();
        let want = [(-7.071, -7.071), (-9.659, -2.588), (-9.659, 2.588)];
        for (p, (x, y)) in v.iter().zip(want) {
            assert!((p.x() - x).abs() < 5e-4 && (p.y() - y).abs() < 5e-4, "{p:?}");
        }
    }

    #[test]
    fn hexagon_vertex() {
        let v = regular_polygon_vertices(6, 10.0, 0.0, Orientation::Ccw).unwrap();
        assert!((v[1].x() - 5.0).abs() < 5e-5);
        assert!((v[1].y() - 8.6603).abs() < 5e-5);
    }

    #[test]
    fn regular_polygon_rejects_bad_input() {
        assert!(regular_polygon_vertices(2, 1.0, 0.0, Orientation::Ccw).is_err());
        assert!(regular_polygon_vertices(5, 0.0, 0.0, Orientation::Ccw).is_err());
        assert!(regular_polygon_vertices(5, -1.0, 0.0, Orientation::Ccw).is_err());
    }

    #[test]
    fn rotation_then_shift_is_identity() {
        for n in [3, 7, 12] {
            let r = 10.0;
            let v = regular_polygon_vertices(n, r, 0.3, Orientation::Ccw).unwrap();
            let step = 2.0 * PI / n as f64;
            for i in 0..n {
                let rotated = v[i].rotate_z(step);
                assert!(rotated.distance(&v[(i + 1) % n]) < 1e-12 * r);
            }
        }
    }

    #[test]
    fn float_polygon_domains() {
        let p = make_float_polygon(vec![Point::new2(0.0, 0.0), Point::new2(1.0, 0.0)], 1).unwrap();
        assert_eq!(curve_of(&p).domain(), (1.0, 2.0));
        assert_eq!(p.segment_count(), 1);

        let dodeca = regular_polygon_vertices(12, 10.0, 0.0, Orientation::Ccw).unwrap();
        let p = make_float_polygon(dodeca, 9).unwrap();
        assert_eq!(curve_of(&p).domain(), (9.0, 12.0));
        assert_eq!(p.segment_count(), 3);

        let hexa = regular_polygon_vertices(6, 10.0, 0.0, Orientation::Ccw).unwrap();
        let p = make_float_polygon(hexa, 3).unwrap();
        assert_eq!(curve_of(&p).domain(), (3.0, 6.0));
        assert_eq!(p.segment_count(), 3);
    }

    #[test]
    fn too_few_points() {
        let e = make_float_polygon(vec![Point::new2(0.0, 0.0); 3], 3).unwrap_err();
        assert!(matches!(e, Error::InvalidArgument(_)));
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let e = make_float_polygon(vec![Point::new2(0.0, 0.0), Point::new3(1.0, 0.0, 0.0)], 1).unwrap_err();
        assert!(matches!(e, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn polygon_curve_round_trip() {
        let v = regular_polygon_vertices(8, 2.0, 0.1, Orientation::Cw).unwrap();
        let p = make_float_polygon(v.clone(), 4).unwrap();
        assert_eq!(ControlPolygon::from_curve(&curve_of(&p)).unwrap(), p);

        let knots = KnotVector::clamped(vec![0., 0., 0., 0., 1., 2., 2., 2., 2.], 3).unwrap();
        let p = ControlPolygon::clamped(v[..5].to_vec(), knots).unwrap();
        assert_eq!(ControlPolygon::from_curve(&curve_of(&p)).unwrap(), p);
    }

    #[test]
    fn knot_vector_validation() {
        assert!(KnotVector::new(vec![0., 1., 0.5, 2.], 1).is_err());
        assert!(KnotVector::new(vec![0., 1., 2.], 1).is_err());
        assert!(KnotVector::clamped(vec![0., 0., 1., 2., 3., 3.], 2).is_err());
        assert!(KnotVector::clamped(vec![0., 0., 0., 1., 1., 1., 2., 2., 2.], 2).is_err());
        let k = KnotVector::uniform_float(5, 2).unwrap();
        assert!(k.is_uniform_float());
        assert_eq!(k.domain(), (2.0, 5.0));
    }

    #[test]
    fn span_lookup() {
        let k = KnotVector::uniform_float(6, 3).unwrap();
        assert_eq!(k.find_span(3.0), 3);
        assert_eq!(k.find_span(3.5), 3);
        assert_eq!(k.find_span(4.0), 4);
        assert_eq!(k.find_span(6.0), 5);
        let k = KnotVector::clamped(vec![0., 0., 0., 1., 1., 2., 2., 2.], 2).unwrap();
        assert_eq!(k.find_span(1.0), 4);
        assert_eq!(k.find_span(0.99), 2);
        assert_eq!(k.find_span(2.0), 4);
    }
}
