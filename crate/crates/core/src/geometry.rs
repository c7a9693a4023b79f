//! Piecewise parametric boundary curves in the complex plane.
//!
//! An [`Arc`] is a single algebraic or trigonometric polynomial piece
//! `z(t)` on a real interval `[a, b]`; a [`Boundary`] is an ordered union of
//! arcs. The [`gallery`] holds six fixed example domains with pinned
//! coefficient data so runs are reproducible.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::fmt;

/// Names accepted by [`gallery`].
pub const GALLERY_NAMES: [&str; 6] =
    ["m_polygon", "curvpolygon", "sun", "lune", "cardioid", "torpedo"];

#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// Declared degree must be >= 1 with a nonzero top coefficient.
    InvalidDegree(String),
    /// Interval must satisfy b > a (and b - a <= 2*pi for trigonometric arcs).
    InvalidInterval(String),
    /// Parameter outside the arc's interval.
    ParameterOutOfRange { t: f64, a: f64, b: f64 },
    /// A boundary needs at least one arc.
    EmptyBoundary,
    /// Unknown gallery domain.
    UnknownDomain(String),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidDegree(msg) => write!(f, "invalid degree: {msg}"),
            Self::InvalidInterval(msg) => write!(f, "invalid interval: {msg}"),
            Self::ParameterOutOfRange { t, a, b } => {
                write!(f, "parameter {t} outside [{a}, {b}]")
            }
            Self::EmptyBoundary => write!(f, "boundary must contain at least one arc"),
            Self::UnknownDomain(name) => write!(
                f,
                "unknown domain {name:?}; gallery domains are {}",
                GALLERY_NAMES.join(", ")
            ),
        }
    }
}

impl std::error::Error for GeometryError {}

/// Coefficient data of one parametric piece.
#[derive(Debug, Clone, PartialEq)]
pub enum ArcData {
    /// `z(t) = sum c_j t^j`, coefficients `c_0..c_k`.
    Algebraic { coeffs: Vec<Complex64> },
    /// `z(t) = a_0 + sum (a_j cos jt + b_j sin jt)`,
    /// `cos_coeffs = [a_0..a_k]`, `sin_coeffs = [b_1..b_k]`.
    Trigonometric { cos_coeffs: Vec<Complex64>, sin_coeffs: Vec<Complex64> },
}

/// One algebraic or trigonometric polynomial curve piece on `[a, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    data: ArcData,
    interval: (f64, f64),
    degree: usize,
}

fn is_zero(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

impl Arc {
    /// Algebraic arc from coefficients `c_0..c_k`, `k >= 1`, top coefficient nonzero.
    pub fn algebraic(coeffs: Vec<Complex64>, a: f64, b: f64) -> Result<Self, GeometryError> {
        if coeffs.len() < 2 {
            return Err(GeometryError::InvalidDegree(
                "algebraic arc needs degree >= 1 (at least two coefficients)".into(),
            ));
        }
        if is_zero(*coeffs.last().unwrap()) {
            return Err(GeometryError::InvalidDegree("top algebraic coefficient is zero".into()));
        }
        check_interval(a, b, false)?;
        let degree = coeffs.len() - 1;
        Ok(Self { data: ArcData::Algebraic { coeffs }, interval: (a, b), degree })
    }

    /// Trigonometric arc from `a_0..a_k` and `b_1..b_k`; requires `k >= 1`,
    /// at least one of `a_k`, `b_k` nonzero and `b - a <= 2*pi`.
    pub fn trigonometric(
        cos_coeffs: Vec<Complex64>,
        sin_coeffs: Vec<Complex64>,
        a: f64,
        b: f64,
    ) -> Result<Self, GeometryError> {
        if cos_coeffs.len() < 2 || sin_coeffs.len() + 1 != cos_coeffs.len() {
            return Err(GeometryError::InvalidDegree(
                "trigonometric arc needs cos coefficients a_0..a_k and sin coefficients b_1..b_k with k >= 1"
                    .into(),
            ));
        }
        let k = cos_coeffs.len() - 1;
        if is_zero(cos_coeffs[k]) && is_zero(sin_coeffs[k - 1]) {
            return Err(GeometryError::InvalidDegree(
                "top trigonometric coefficients a_k and b_k are both zero".into(),
            ));
        }
        check_interval(a, b, true)?;
        Ok(Self { data: ArcData::Trigonometric { cos_coeffs, sin_coeffs }, interval: (a, b), degree: k })
    }

    pub fn data(&self) -> &ArcData {
        &self.data
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Parameter interval `[a, b]`.
    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn is_trigonometric(&self) -> bool {
        matches!(self.data, ArcData::Trigonometric { .. })
    }

    /// Evaluates `z(t)`. Horner for algebraic arcs, direct summation for
    /// trigonometric ones.
    pub fn eval(&self, t: f64) -> Result<Complex64, GeometryError> {
        let (a, b) = self.interval;
        if t < a || t > b {
            return Err(GeometryError::ParameterOutOfRange { t, a, b });
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> Complex64 {
        match &self.data {
            ArcData::Algebraic { coeffs } => {
                let mut acc = Complex64::new(0.0, 0.0);
                for &c in coeffs.iter().rev() {
                    acc = acc * t + c;
                }
                acc
            }
            ArcData::Trigonometric { cos_coeffs, sin_coeffs } => {
                let mut acc = cos_coeffs[0];
                for j in 1..cos_coeffs.len() {
                    let jt = j as f64 * t;
                    acc += cos_coeffs[j] * jt.cos() + sin_coeffs[j - 1] * jt.sin();
                }
                acc
            }
        }
    }

    /// Start point `z(a)`.
    pub fn start(&self) -> Complex64 {
        self.eval_unchecked(self.interval.0)
    }

    /// End point `z(b)`.
    pub fn end(&self) -> Complex64 {
        self.eval_unchecked(self.interval.1)
    }
}

fn check_interval(a: f64, b: f64, trig: bool) -> Result<(), GeometryError> {
    if !a.is_finite() || !b.is_finite() || b <= a {
        return Err(GeometryError::InvalidInterval(format!("need finite b > a, got [{a}, {b}]")));
    }
    if trig && b - a > TAU {
        return Err(GeometryError::InvalidInterval(format!(
            "trigonometric interval length {} exceeds 2*pi",
            b - a
        )));
    }
    Ok(())
}

/// Ordered finite union of arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundary {
    label: String,
    arcs: Vec<Arc>,
}

impl Boundary {
    pub fn new(label: impl Into<String>, arcs: Vec<Arc>) -> Result<Self, GeometryError> {
        if arcs.is_empty() {
            return Err(GeometryError::EmptyBoundary);
        }
        Ok(Self { label: label.into(), arcs })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }
}

/// Returns the fixed example boundary with the given name.
///
/// The shapes are pinned coefficient data: a 12-sided M polygon inscribed in
/// the square `[-1,1]^2`, a curvilinear hexagon alternating straight and cubic
/// sides, a sun (unit circle with 8 rays of length 0.5), a lune (the disk
/// difference of two radius-1.5 disks centered at -1 and +1), a cardioid and
/// a self-intersecting torpedo curve.
pub fn gallery(name: &str) -> Result<Boundary, GeometryError> {
    match name {
        "m_polygon" => m_polygon(),
        "curvpolygon" => curvpolygon(),
        "sun" => sun(),
        "lune" => lune(),
        "cardioid" => cardioid(),
        "torpedo" => torpedo(),
        other => Err(GeometryError::UnknownDomain(other.to_string())),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Straight segment from `p` to `q` on `[0, 1]`.
fn segment(p: Complex64, q: Complex64) -> Arc {
    Arc::algebraic(vec![p, q - p], 0.0, 1.0).expect("segment endpoints are distinct")
}

/// Cubic Bezier from `p0` to `p3` with control points `p1`, `p2`, in monomial
/// form on `[0, 1]`.
fn bezier(p0: Complex64, p1: Complex64, p2: Complex64, p3: Complex64) -> Arc {
    let c0 = p0;
    let c1 = 3.0 * (p1 - p0);
    let c2 = 3.0 * (p0 - 2.0 * p1 + p2);
    let c3 = p3 - p0 + 3.0 * (p1 - p2);
    Arc::algebraic(vec![c0, c1, c2, c3], 0.0, 1.0).expect("control points give a genuine cubic")
}

fn m_polygon() -> Result<Boundary, GeometryError> {
    let v = [
        c(-1.0, -1.0),
        c(-1.0, 1.0),
        c(-0.5, 1.0),
        c(0.0, 0.2),
        c(0.5, 1.0),
        c(1.0, 1.0),
        c(1.0, -1.0),
        c(0.5, -1.0),
        c(0.5, 0.4),
        c(0.0, -0.2),
        c(-0.5, 0.4),
        c(-0.5, -1.0),
    ];
    let arcs = (0..12).map(|j| segment(v[j], v[(j + 1) % 12])).collect();
    Boundary::new("m_polygon", arcs)
}

fn curvpolygon() -> Result<Boundary, GeometryError> {
    // Regular hexagon vertices; straight and outward-bulging cubic sides alternate.
    let v: Vec<Complex64> =
        (0..6).map(|j| Complex64::from_polar(1.0, j as f64 * PI / 3.0)).collect();
    let mut arcs = Vec::with_capacity(6);
    for j in 0..6 {
        let (p, q) = (v[j], v[(j + 1) % 6]);
        if j % 2 == 0 {
            arcs.push(segment(p, q));
        } else {
            let c1 = 1.25 * (2.0 * p + q) / 3.0;
            let c2 = 1.25 * (p + 2.0 * q) / 3.0;
            arcs.push(bezier(p, c1, c2, q));
        }
    }
    Boundary::new("curvpolygon", arcs)
}

fn sun() -> Result<Boundary, GeometryError> {
    let circle = Arc::trigonometric(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 1.0)], 0.0, TAU)?;
    let mut arcs = vec![circle];
    for j in 0..8 {
        let dir = Complex64::from_polar(1.0, j as f64 * PI / 4.0);
        arcs.push(segment(dir, 1.5 * dir));
    }
    Boundary::new("sun", arcs)
}

fn lune() -> Result<Boundary, GeometryError> {
    // Disk difference B(-1, 1.5) \ B(1, 1.5); the circles meet at +-i*sqrt(5)/2.
    let cut_left = (2.0f64 / 3.0).acos();
    let cut_right = (-2.0f64 / 3.0).acos();
    // Left circle, counterclockwise through -2.5.
    let left = Arc::trigonometric(
        vec![c(-1.0, 0.0), c(1.5, 0.0)],
        vec![c(0.0, 1.5)],
        cut_left,
        TAU - cut_left,
    )?;
    // Right circle traversed clockwise (conjugate parametrization) so the two
    // arcs close up cyclically.
    let right = Arc::trigonometric(
        vec![c(1.0, 0.0), c(1.5, 0.0)],
        vec![c(0.0, -1.5)],
        cut_right,
        TAU - cut_right,
    )?;
    Boundary::new("lune", vec![left, right])
}

fn cardioid() -> Result<Boundary, GeometryError> {
    // cos(t)(1 - cos t) + i sin(t)(1 - cos t) in Fourier form.
    let arc = Arc::trigonometric(
        vec![c(-0.5, 0.0), c(1.0, 0.0), c(-0.5, 0.0)],
        vec![c(0.0, 1.0), c(0.0, -0.5)],
        0.0,
        TAU,
    )?;
    Boundary::new("cardioid", vec![arc])
}

fn torpedo() -> Result<Boundary, GeometryError> {
    // cos(t) cos(2t) e^{it} in Fourier form.
    let arc = Arc::trigonometric(
        vec![c(0.25, 0.0), c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.25, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.25)],
        0.0,
        TAU,
    )?;
    Boundary::new("torpedo", vec![arc])
}
