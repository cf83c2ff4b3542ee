//! Core geometric primitives: points, spheres, hyperplanes, lifted
//! simplices, the paraboloid lifting map and the crossing classifier.
//!
//! Numbers are dual-represented: exact rationals whenever the input admits
//! them, binary floating point otherwise. Exact inputs stay exact through
//! every operation here; float contaminates on contact.

use std::fmt;
use std::str::FromStr;

use num::traits::Signed;
use num::{BigRational, FromPrimitive, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rat;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("a point needs at least one coordinate")]
    EmptyPoint,
    #[error("radius_sq must be positive, got {0}")]
    NotASphere(String),
    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,
    #[error("degenerate simplex: vertices are affinely dependent")]
    DegenerateSimplex,
    #[error("cannot parse coordinate {0:?}")]
    BadCoordinate(String),
    #[error("point set mixes dimensions: {0} vs {1}")]
    MixedDimensions(usize, usize),
    #[error("duplicate points at indices {0} and {1} (within tolerance)")]
    DuplicatePoints(usize, usize),
}

/// Exact-or-float number. Arithmetic keeps exactness while both operands
/// are exact and degrades to f64 as soon as a float is involved.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rat),
    Approx(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(Rat::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::Exact(Rat::from_integer(v.into()))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx(v) => *v,
        }
    }

    /// Exact rational view; floats convert losslessly (every f64 is dyadic).
    pub fn to_rat(&self) -> Rat {
        match self {
            Scalar::Exact(r) => r.clone(),
            Scalar::Approx(v) => BigRational::from_f64(*v).expect("finite float"),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            _ => Scalar::Approx(self.to_f64() - other.to_f64()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => Scalar::Approx(self.to_f64() * other.to_f64()),
        }
    }

    /// |self - other| <= tol, exactly when both sides are exact.
    pub fn within(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                let t = BigRational::from_f64(tol).expect("finite tol");
                (a - b).abs() <= t
            }
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }

    /// Sign of the value: -1, 0, +1. Exact for rationals; floats compare
    /// against literal zero.
    pub fn sign(&self) -> i8 {
        match self {
            Scalar::Exact(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Approx(v) => {
                if *v == 0.0 {
                    0
                } else if *v > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Serialized form: exact values as "p/q", floats as decimal strings
    /// with 12 significant digits.
    pub fn encode(&self) -> String {
        match self {
            Scalar::Exact(r) => r.to_string(),
            Scalar::Approx(v) => format_f64_12(*v),
        }
    }

    /// Inverse of [`Scalar::encode`]: "p/q" and integer literals parse
    /// exactly, anything with a decimal point or exponent parses as f64.
    pub fn decode(s: &str) -> Result<Scalar, GeomError> {
        let t = s.trim();
        if t.contains('/') || !t.contains('.') && !t.contains('e') && !t.contains('E') {
            BigRational::from_str(t)
                .map(Scalar::Exact)
                .map_err(|_| GeomError::BadCoordinate(s.to_string()))
        } else {
            t.parse::<f64>()
                .map(Scalar::Approx)
                .map_err(|_| GeomError::BadCoordinate(s.to_string()))
        }
    }
}

pub fn format_f64_12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let s = format!("{:.11e}", v);
    // normalize "1.50000000000e0"-style output into a plain decimal when small
    match s.parse::<f64>() {
        Ok(_) => s,
        Err(_) => format!("{}", v),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

/// A point of R^d.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    coords: Vec<Scalar>,
}

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Result<Self, GeomError> {
        if coords.is_empty() {
            return Err(GeomError::EmptyPoint);
        }
        Ok(Point { coords })
    }

    pub fn from_f64(coords: &[f64]) -> Self {
        Point {
            coords: coords.iter().map(|&v| Scalar::Approx(v)).collect(),
        }
    }

    pub fn from_rat(coords: Vec<Rat>) -> Self {
        Point {
            coords: coords.into_iter().map(Scalar::Exact).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(Scalar::is_exact)
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coords.iter().map(Scalar::to_f64).collect()
    }

    pub fn to_rat_vec(&self) -> Vec<Rat> {
        self.coords.iter().map(Scalar::to_rat).collect()
    }
}

/// Sum of squared coordinate differences. Exact when both points are exact.
pub fn squared_distance(a: &Point, b: &Point) -> Result<Scalar, GeomError> {
    if a.dim() != b.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let mut acc = Scalar::zero();
    for (x, y) in a.coords.iter().zip(&b.coords) {
        let d = x.sub(y);
        acc = acc.add(&d.mul(&d));
    }
    Ok(acc)
}

/// Sphere given by center and squared radius.
#[derive(Clone, Debug, PartialEq)]
pub struct Sphere {
    pub center: Point,
    pub radius_sq: Scalar,
}

impl Sphere {
    pub fn new(center: Point, radius_sq: Scalar) -> Result<Self, GeomError> {
        if radius_sq.sign() <= 0 {
            return Err(GeomError::NotASphere(radius_sq.encode()));
        }
        Ok(Sphere { center, radius_sq })
    }

    pub fn unit(center: Point) -> Self {
        Sphere {
            center,
            radius_sq: Scalar::from_int(1),
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.center.dim()
    }
}

/// Hyperplane { x : <normal, x> = offset }.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

impl Hyperplane {
    pub fn new(normal: Vec<Scalar>, offset: Scalar) -> Result<Self, GeomError> {
        if normal.iter().all(|c| c.sign() == 0) {
            return Err(GeomError::ZeroNormal);
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// <normal, p> - offset.
    pub fn eval(&self, p: &Point) -> Result<Scalar, GeomError> {
        if p.dim() != self.normal.len() {
            return Err(GeomError::DimensionMismatch {
                expected: self.normal.len(),
                got: p.dim(),
            });
        }
        let mut acc = Scalar::zero();
        for (n, c) in self.normal.iter().zip(p.coords()) {
            acc = acc.add(&n.mul(c));
        }
        Ok(acc.sub(&self.offset))
    }
}

/// The lifting map x -> (x, |x|^2).
pub fn lift_point(p: &Point) -> Point {
    let mut coords = p.coords.to_vec();
    let mut sq = Scalar::zero();
    for c in p.coords() {
        sq = sq.add(&c.mul(c));
    }
    coords.push(sq);
    Point { coords }
}

/// Lift a sphere of R^d to a hyperplane of R^{d+1}: a point lies on the
/// sphere iff its lift satisfies x_{d+1} = 2<c,x> + (r^2 - |c|^2).
pub fn lift_sphere(s: &Sphere) -> Result<Hyperplane, GeomError> {
    if s.radius_sq.sign() <= 0 {
        return Err(GeomError::NotASphere(s.radius_sq.encode()));
    }
    let two = Scalar::from_int(2);
    let mut normal: Vec<Scalar> = s
        .center
        .coords()
        .iter()
        .map(|c| Scalar::zero().sub(&two.mul(c)))
        .collect();
    normal.push(Scalar::from_int(1));
    let mut csq = Scalar::zero();
    for c in s.center.coords() {
        csq = csq.add(&c.mul(c));
    }
    let offset = s.radius_sq.sub(&csq);
    Ok(Hyperplane { normal, offset })
}

/// A simplex in lifted space; lower-dimensional relatively open cells carry
/// fewer than D+1 vertices. Vertices must be affinely independent.
#[derive(Clone, Debug)]
pub struct LiftedSimplex {
    vertices: Vec<Point>,
    dim_cell: usize,
}

impl LiftedSimplex {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        if vertices.is_empty() {
            return Err(GeomError::DegenerateSimplex);
        }
        let d = vertices[0].dim();
        if vertices.iter().any(|v| v.dim() != d) {
            return Err(GeomError::MixedDimensions(d, 0));
        }
        if !affinely_independent(&vertices) {
            return Err(GeomError::DegenerateSimplex);
        }
        let dim_cell = vertices.len() - 1;
        Ok(LiftedSimplex { vertices, dim_cell })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim_cell(&self) -> usize {
        self.dim_cell
    }
}

fn affinely_independent(vertices: &[Point]) -> bool {
    let n = vertices.len();
    if n == 1 {
        return true;
    }
    if vertices.iter().all(Point::is_exact) {
        let base = vertices[0].to_rat_vec();
        let mut rows: Vec<Vec<Rat>> = vertices[1..]
            .iter()
            .map(|v| {
                v.to_rat_vec()
                    .iter()
                    .zip(&base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        rational_rank(&mut rows) == n - 1
    } else {
        let base = vertices[0].to_f64_vec();
        let mut rows: Vec<Vec<f64>> = vertices[1..]
            .iter()
            .map(|v| {
                v.to_f64_vec()
                    .iter()
                    .zip(&base)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        float_rank(&mut rows, 1e-12) == n - 1
    }
}

pub(crate) fn rational_rank(rows: &mut [Vec<Rat>]) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        if let Some(p) = (rank..nrows).find(|&i| !rows[i][col].is_zero()) {
            rows.swap(rank, p);
            let pivot = rows[rank][col].clone();
            for i in rank + 1..nrows {
                if !rows[i][col].is_zero() {
                    let factor = &rows[i][col] / &pivot;
                    for j in col..ncols {
                        let sub = &factor * &rows[rank][j];
                        rows[i][j] = &rows[i][j] - sub;
                    }
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

fn float_rank(rows: &mut [Vec<f64>], eps: f64) -> usize {
    let nrows = rows.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        let (pi, pv) = (rank..nrows)
            .map(|i| (i, rows[i][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if pv > eps {
            rows.swap(rank, pi);
            let pivot = rows[rank][col];
            for i in rank + 1..nrows {
                let factor = rows[i][col] / pivot;
                for j in col..ncols {
                    rows[i][j] -= factor * rows[rank][j];
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

/// Outcome of classifying a hyperplane against a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Crosses,
    Contains,
    Misses,
}

/// Classify a hyperplane against a simplex by vertex signs: `Contains` when
/// every vertex satisfies the equation, `Crosses` when vertices carry
/// strictly opposite signs or a zero sign occurs next to a nonzero one,
/// `Misses` otherwise. Exact for rational inputs.
pub fn classify(h: &Hyperplane, s: &LiftedSimplex) -> Result<Classification, GeomError> {
    if !affinely_independent(s.vertices()) {
        return Err(GeomError::DegenerateSimplex);
    }
    let mut pos = false;
    let mut neg = false;
    let mut zero = false;
    for v in s.vertices() {
        match h.eval(v)?.sign() {
            1 => pos = true,
            -1 => neg = true,
            _ => zero = true,
        }
    }
    Ok(if !pos && !neg {
        Classification::Contains
    } else if (pos && neg) || (zero && (pos || neg)) {
        Classification::Crosses
    } else {
        Classification::Misses
    })
}

/// Finite labeled point set.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub points: Vec<Point>,
    pub dim: usize,
    pub label: String,
}

impl PointSet {
    /// Validating constructor: uniform dimension, no duplicates within
    /// `tol` on squared distance.
    pub fn new(points: Vec<Point>, label: impl Into<String>, tol: f64) -> Result<Self, GeomError> {
        if points.is_empty() {
            return Err(GeomError::EmptyPoint);
        }
        let dim = points[0].dim();
        for p in &points {
            if p.dim() != dim {
                return Err(GeomError::MixedDimensions(dim, p.dim()));
            }
        }
        let zero = Scalar::zero();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let d2 = squared_distance(&points[i], &points[j])?;
                if d2.within(&zero, tol) {
                    return Err(GeomError::DuplicatePoints(i, j));
                }
            }
        }
        Ok(PointSet {
            points,
            dim,
            label: label.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "points": self.points.iter()
                .map(|p| p.coords().iter().map(Scalar::encode).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "label": self.label,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, GeomError> {
        let dim = v["dim"]
            .as_u64()
            .ok_or_else(|| GeomError::BadCoordinate("dim".into()))? as usize;
        let label = v["label"].as_str().unwrap_or("").to_string();
        let raw = v["points"]
            .as_array()
            .ok_or_else(|| GeomError::BadCoordinate("points".into()))?;
        let mut points = Vec::with_capacity(raw.len());
        for row in raw {
            let cells = row
                .as_array()
                .ok_or_else(|| GeomError::BadCoordinate(row.to_string()))?;
            if cells.len() != dim {
                return Err(GeomError::MixedDimensions(dim, cells.len()));
            }
            let mut coords = Vec::with_capacity(dim);
            for c in cells {
                let s = match c {
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Number(n) => n.to_string(),
                    _ => return Err(GeomError::BadCoordinate(c.to_string())),
                };
                coords.push(Scalar::decode(&s)?);
            }
            points.push(Point::new(coords)?);
        }
        if points.is_empty() {
            return Err(GeomError::EmptyPoint);
        }
        Ok(PointSet { points, dim, label })
    }
}
