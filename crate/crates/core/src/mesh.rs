//! Chebyshev point sets, interval maps and admissible meshes on arcs and
//! boundaries.
//!
//! A mesh of degree `n` with oversampling factor `m > 1` samples each arc of
//! degree `k` at the images of `ceil(m*n*k)` Chebyshev parameters
//! (`ceil(2*m*n*k)` in the trigonometric case) and carries the norming
//! constant `c_m = 1/cos(pi/(2m))`: the sup of any degree-`n` polynomial on
//! the curve is at most `c_m` times its maximum on the mesh.

use crate::geometry::{Arc, Boundary, GeometryError};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum MeshError {
    /// Degree must be >= 1.
    InvalidDegree(usize),
    /// Oversampling factor must be > 1.
    InvalidFactor(f64),
    /// Chebyshev point count must be >= 1.
    EmptyPointSet,
    /// Trigonometric map needs 0 < b - a <= 2*pi.
    InvalidInterval { a: f64, b: f64 },
    Geometry(GeometryError),
}

impl fmt::Display for MeshError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidDegree(n) => write!(f, "mesh degree must be >= 1, got {n}"),
            Self::InvalidFactor(m) => write!(f, "oversampling factor must be > 1, got {m}"),
            Self::EmptyPointSet => write!(f, "need at least one Chebyshev point"),
            Self::InvalidInterval { a, b } => write!(f, "need 0 < b - a <= 2*pi, got [{a}, {b}]"),
            Self::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MeshError {}

impl From<GeometryError> for MeshError {
    fn from(e: GeometryError) -> Self {
        Self::Geometry(e)
    }
}

/// Which univariate Chebyshev family seeds the mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    /// `cos((2j-1)pi/(2N))`, `j = 1..N`; avoids arc endpoints.
    Zeros,
    /// `cos(j pi/N)`, `j = 0..N`; includes both endpoints.
    Extrema,
}

impl PointKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Zeros => "zeros",
            Self::Extrema => "extrema",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "zeros" => Some(Self::Zeros),
            "extrema" => Some(Self::Extrema),
            _ => None,
        }
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Degree, oversampling factor and point family of a mesh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshParams {
    pub degree: usize,
    pub factor: f64,
    pub kind: PointKind,
}

impl MeshParams {
    pub fn new(degree: usize, factor: f64) -> Result<Self, MeshError> {
        Self::with_kind(degree, factor, PointKind::Zeros)
    }

    pub fn with_kind(degree: usize, factor: f64, kind: PointKind) -> Result<Self, MeshError> {
        if degree == 0 {
            return Err(MeshError::InvalidDegree(degree));
        }
        if !(factor > 1.0) {
            return Err(MeshError::InvalidFactor(factor));
        }
        Ok(Self { degree, factor, kind })
    }
}

/// Source record of a mesh point: arc index within the boundary and the
/// parameter value it was mapped from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance {
    pub arc: usize,
    pub t: f64,
}

/// A finite norming subset of a boundary, with provenance and the norming
/// constant of its oversampling factor.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    points: Vec<Complex64>,
    provenance: Vec<Provenance>,
    params: MeshParams,
    boundary_label: String,
    norming: f64,
}

impl Mesh {
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn params(&self) -> MeshParams {
        self.params
    }

    pub fn boundary_label(&self) -> &str {
        &self.boundary_label
    }

    /// The norming constant `c_m` certified for this mesh.
    pub fn norming_constant(&self) -> f64 {
        self.norming
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Rebuilds a mesh from parsed table data. Used by the table round-trip;
    /// trusts the caller for provenance consistency.
    pub fn from_parts(
        points: Vec<Complex64>,
        provenance: Vec<Provenance>,
        params: MeshParams,
        boundary_label: String,
    ) -> Result<Self, MeshError> {
        let norming = norming_constant(params.factor)?;
        if points.len() != provenance.len() {
            return Err(MeshError::EmptyPointSet);
        }
        Ok(Self { points, provenance, params, boundary_label, norming })
    }
}

/// Chebyshev zeros (`N` points) or extrema (`N + 1` points) in decreasing
/// order. Mirror symmetry about 0 is exact: the lower half is the negation
/// of the upper half, and an odd middle point is exactly 0.
pub fn chebyshev_points(n: usize, kind: PointKind) -> Result<Vec<f64>, MeshError> {
    if n == 0 {
        return Err(MeshError::EmptyPointSet);
    }
    match kind {
        PointKind::Zeros => {
            let mut out = vec![0.0; n];
            for j in 0..n / 2 {
                let v = ((2 * j + 1) as f64 * PI / (2 * n) as f64).cos();
                out[j] = v;
                out[n - 1 - j] = -v;
            }
            Ok(out)
        }
        PointKind::Extrema => {
            let mut out = vec![0.0; n + 1];
            out[0] = 1.0;
            out[n] = -1.0;
            for j in 1..=n / 2 {
                let v = if 2 * j == n { 0.0 } else { (j as f64 * PI / n as f64).cos() };
                out[j] = v;
                out[n - j] = -v;
            }
            Ok(out)
        }
    }
}

/// Affine map of `[-1, 1]` onto `[a, b]`.
pub fn map_algebraic(u: f64, a: f64, b: f64) -> f64 {
    0.5 * (b - a) * u + 0.5 * (b + a)
}

/// Subperiodic map of `[-1, 1]` onto `[a, b]`:
/// `2*asin(u*sin((b-a)/4)) + (b+a)/2`. Strictly increasing;
/// requires `0 < b - a <= 2*pi`.
pub fn map_trigonometric(u: f64, a: f64, b: f64) -> Result<f64, MeshError> {
    if !(b > a) || b - a > TAU {
        return Err(MeshError::InvalidInterval { a, b });
    }
    Ok(2.0 * (u * (0.25 * (b - a)).sin()).asin() + 0.5 * (b + a))
}

/// Norming constant `c_m = 1/cos(pi/(2m))` for oversampling factor `m > 1`.
pub fn norming_constant(m: f64) -> Result<f64, MeshError> {
    if !(m > 1.0) {
        return Err(MeshError::InvalidFactor(m));
    }
    Ok(1.0 / (PI / (2.0 * m)).cos())
}

/// Chebyshev parameters for one arc, mapped into its interval, in ascending
/// parameter order. `nu = n * k`; the count is `ceil(m*nu)` parameters for
/// algebraic arcs and `ceil(2*m*nu)` for trigonometric ones (one more point
/// under [`PointKind::Extrema`]).
fn arc_parameters(arc: &Arc, params: MeshParams) -> Result<Vec<f64>, MeshError> {
    let nu = (params.degree * arc.degree()) as f64;
    let (a, b) = arc.interval();
    let count = if arc.is_trigonometric() {
        (2.0 * params.factor * nu).ceil() as usize
    } else {
        (params.factor * nu).ceil() as usize
    };
    let us = chebyshev_points(count, params.kind)?;
    // chebyshev_points is decreasing and the maps are increasing, so reverse
    // for ascending parameter order; map values are clamped into [a, b] to
    // absorb endpoint rounding.
    us.iter()
        .rev()
        .map(|&u| {
            let t = if arc.is_trigonometric() {
                map_trigonometric(u, a, b)?
            } else {
                map_algebraic(u, a, b)
            };
            Ok(t.clamp(a, b))
        })
        .collect()
}

/// Admissible mesh of a single arc (treated as arc index 0 of an unnamed
/// boundary).
pub fn arc_mesh(arc: &Arc, params: MeshParams) -> Result<Mesh, MeshError> {
    let boundary = Boundary::new("", vec![arc.clone()])?;
    boundary_mesh(&boundary, params)
}

/// Admissible mesh of a boundary: the union of its arc meshes, deduplicated.
/// Two points coincide when they are within `1e-12 * max(1, cloud diameter)`;
/// the first occurrence (arc order, then parameter order) is kept.
pub fn boundary_mesh(boundary: &Boundary, params: MeshParams) -> Result<Mesh, MeshError> {
    MeshParams::with_kind(params.degree, params.factor, params.kind)?;
    let norming = norming_constant(params.factor)?;
    let mut raw: Vec<(Complex64, Provenance)> = Vec::new();
    for (arc_index, arc) in boundary.arcs().iter().enumerate() {
        for t in arc_parameters(arc, params)? {
            let z = arc.eval(t)?;
            raw.push((z, Provenance { arc: arc_index, t }));
        }
    }
    let (points, provenance) = dedup_points(raw);
    Ok(Mesh { points, provenance, params, boundary_label: boundary.label().to_string(), norming })
}

/// Keeps the first occurrence of each point under the dedup tolerance, using
/// a uniform grid of tolerance-sized cells so the scan stays linear.
fn dedup_points(raw: Vec<(Complex64, Provenance)>) -> (Vec<Complex64>, Vec<Provenance>) {
    use std::collections::HashMap;
    let (mut lo_re, mut hi_re) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_im, mut hi_im) = (f64::INFINITY, f64::NEG_INFINITY);
    for (z, _) in &raw {
        lo_re = lo_re.min(z.re);
        hi_re = hi_re.max(z.re);
        lo_im = lo_im.min(z.im);
        hi_im = hi_im.max(z.im);
    }
    let diam = ((hi_re - lo_re).powi(2) + (hi_im - lo_im).powi(2)).sqrt();
    let tol = 1e-12 * diam.max(1.0);

    let cell = |z: &Complex64| ((z.re / tol).floor() as i64, (z.im / tol).floor() as i64);
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let mut points: Vec<Complex64> = Vec::with_capacity(raw.len());
    let mut provenance = Vec::with_capacity(raw.len());
    'outer: for (z, prov) in raw {
        let (cx, cy) = cell(&z);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(bucket) = grid.get(&(cx + dx, cy + dy)) {
                    for &idx in bucket {
                        if (z - points[idx]).norm() <= tol {
                            continue 'outer;
                        }
                    }
                }
            }
        }
        grid.entry((cx, cy)).or_default().push(points.len());
        points.push(z);
        provenance.push(prov);
    }
    (points, provenance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::gallery;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn segment_arc() -> Arc {
        Arc::algebraic(vec![c(0.0, 0.0), c(1.0, 0.0)], -1.0, 1.0).unwrap()
    }

    #[test]
    fn chebyshev_zeros_n2() {
        let pts = chebyshev_points(2, PointKind::Zeros).unwrap();
        let r = 0.5f64.sqrt();
        assert!((pts[0] - r).abs() < 1e-15);
        assert!((pts[1] + r).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_extrema_n2_exact() {
        assert_eq!(chebyshev_points(2, PointKind::Extrema).unwrap(), vec![1.0, 0.0, -1.0]);
    }

    #[test]
    fn chebyshev_single_zero_is_exact_zero() {
        assert_eq!(chebyshev_points(1, PointKind::Zeros).unwrap(), vec![0.0]);
    }

    #[test]
    fn chebyshev_zero_count_rejected() {
        assert!(matches!(chebyshev_points(0, PointKind::Zeros), Err(MeshError::EmptyPointSet)));
    }

    #[test]
    fn algebraic_map_hits_endpoints_and_midpoint() {
        assert_eq!(map_algebraic(-1.0, 0.0, TAU), 0.0);
        assert_eq!(map_algebraic(0.0, -3.0, 5.0), 1.0);
        assert_eq!(map_algebraic(0.5, 0.0, 4.0), 3.0);
    }

    #[test]
    fn trigonometric_map_endpoints() {
        assert!((map_trigonometric(1.0, 0.0, TAU).unwrap() - TAU).abs() < 1e-15);
        assert_eq!(map_trigonometric(0.0, 0.3, 0.9).unwrap(), 0.6);
        assert!((map_trigonometric(-1.0, 0.0, PI).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn trigonometric_map_rejects_long_interval() {
        assert!(map_trigonometric(0.0, 0.0, 7.0).is_err());
    }

    #[test]
    fn norming_constants() {
        assert!((norming_constant(2.0).unwrap() - 2.0f64.sqrt()).abs() < 1e-15);
        assert!((norming_constant(4.0).unwrap() - 1.0823922002923940).abs() < 1e-12);
        assert!(norming_constant(1.0).is_err());
        // c_m - 1 ~ pi^2 / (8 m^2) for large m.
        let m = 100.0;
        let cm = norming_constant(m).unwrap();
        assert!(((cm - 1.0) * 8.0 * m * m / (PI * PI) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn segment_mesh_counts_and_identity() {
        let params = MeshParams::new(20, 2.0).unwrap();
        let mesh = arc_mesh(&segment_arc(), params).unwrap();
        assert_eq!(mesh.len(), 40);
        // Identity parametrization: mesh points are the Chebyshev points.
        let mut cheb = chebyshev_points(40, PointKind::Zeros).unwrap();
        cheb.reverse();
        for (p, x) in mesh.points().iter().zip(cheb) {
            assert_eq!(*p, c(x, 0.0));
        }
    }

    #[test]
    fn circle_mesh_count_is_doubled() {
        let circle =
            Arc::trigonometric(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 1.0)], 0.0, TAU).unwrap();
        let params = MeshParams::new(20, 2.0).unwrap();
        assert_eq!(arc_mesh(&circle, params).unwrap().len(), 80);
    }

    #[test]
    fn m_polygon_mesh_count() {
        let params = MeshParams::new(20, 2.0).unwrap();
        let mesh = boundary_mesh(&gallery("m_polygon").unwrap(), params).unwrap();
        assert_eq!(mesh.len(), 480);
    }

    #[test]
    fn sun_min_degree_count() {
        let params = MeshParams::new(1, 2.0).unwrap();
        let mesh = boundary_mesh(&gallery("sun").unwrap(), params).unwrap();
        assert_eq!(mesh.len(), 20);
    }

    #[test]
    fn extrema_kind_dedups_shared_vertices() {
        let params = MeshParams::with_kind(2, 2.0, PointKind::Extrema).unwrap();
        let mesh = boundary_mesh(&gallery("m_polygon").unwrap(), params).unwrap();
        // 12 arcs x (4+1) points, 12 shared vertices appear once.
        assert_eq!(mesh.len(), 12 * 5 - 12);
    }

    #[test]
    fn provenance_reproduces_points() {
        let params = MeshParams::new(3, 2.5).unwrap();
        let boundary = gallery("lune").unwrap();
        let mesh = boundary_mesh(&boundary, params).unwrap();
        for (z, p) in mesh.points().iter().zip(mesh.provenance()) {
            let back = boundary.arcs()[p.arc].eval(p.t).unwrap();
            assert_eq!(*z, back);
        }
    }

    #[test]
    fn meshes_are_deterministic() {
        let params = MeshParams::new(7, 3.0).unwrap();
        let b = gallery("sun").unwrap();
        let m1 = boundary_mesh(&b, params).unwrap();
        let m2 = boundary_mesh(&b, params).unwrap();
        assert_eq!(m1, m2);
    }

    #[test]
    fn non_integer_factor_uses_ceiling() {
        let params = MeshParams::new(3, 1.5).unwrap();
        let mesh = arc_mesh(&segment_arc(), params).unwrap();
        // ceil(1.5 * 3) = 5
        assert_eq!(mesh.len(), 5);
    }
}
