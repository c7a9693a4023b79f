//! Shifted-and-scaled polynomial basis and its discrete orthonormalization.
//!
//! The working basis is `q_j(z) = ((z - z_b)/delta)^(j-1)` with `z_b` the
//! barycenter of a point set and `delta` the maximal distance from it. QR of
//! the associated Vandermonde matrix gives a basis `pi_k` with orthonormal
//! columns on the points: `[pi_1..pi_{n+1}] = [q_1..q_{n+1}] R^{-1}`. This is
//! what keeps all Vandermonde-like matrices well conditioned up to moderately
//! high degrees.

use crate::linalg::{self, ComplexMatrix, LinalgError};
use num_complex::Complex64;
use std::fmt;

/// Orthogonality defect above which a second QR pass is applied, and the
/// bound the result is expected to satisfy.
pub const ORTHO_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum BasisError {
    /// Fewer than two distinct points, so no scale can be defined.
    DegenerateGeometry,
    /// Not enough points for the requested degree.
    TooFewPoints { needed: usize, got: usize },
    /// The Vandermonde matrix is numerically rank deficient; carries the
    /// first failing polynomial degree.
    RankDeficient { degree: usize },
    Linalg(LinalgError),
}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DegenerateGeometry => write!(f, "all points coincide; basis scale is zero"),
            Self::TooFewPoints { needed, got } => {
                write!(f, "need at least {needed} points, got {got}")
            }
            Self::RankDeficient { degree } => write!(
                f,
                "Vandermonde rank deficient at degree {degree}; degree too high for this mesh/precision"
            ),
            Self::Linalg(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BasisError {}

impl From<LinalgError> for BasisError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Singular { index } => Self::RankDeficient { degree: index },
            LinalgError::RankDeficient { rank } => Self::RankDeficient { degree: rank },
            other => Self::Linalg(other),
        }
    }
}

/// Center, scale and degree of the shifted-scaled monomial basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    pub center: Complex64,
    pub scale: f64,
    pub degree: usize,
}

impl BasisSpec {
    pub fn new(center: Complex64, scale: f64, degree: usize) -> Result<Self, BasisError> {
        if !(scale > 0.0) {
            return Err(BasisError::DegenerateGeometry);
        }
        Ok(Self { center, scale, degree })
    }

    /// Basis values `q_1(z)..q_{n+1}(z)`, i.e. powers of `(z - z_b)/delta`.
    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        let w = (z - self.center) / self.scale;
        let mut row = Vec::with_capacity(self.degree + 1);
        let mut p = Complex64::new(1.0, 0.0);
        row.push(p);
        for _ in 0..self.degree {
            p *= w;
            row.push(p);
        }
        row
    }
}

/// Barycenter and maximal-distance scale of a point set.
pub fn basis_spec(points: &[Complex64], degree: usize) -> Result<BasisSpec, BasisError> {
    if points.len() < 2 {
        return Err(BasisError::TooFewPoints { needed: 2, got: points.len() });
    }
    let center = points.iter().sum::<Complex64>() / points.len() as f64;
    let scale = points.iter().map(|z| (z - center).norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Err(BasisError::DegenerateGeometry);
    }
    Ok(BasisSpec { center, scale, degree })
}

/// Vandermonde-like matrix `[q_j(z_i)]` of the shifted-scaled basis.
pub fn vandermonde(points: &[Complex64], spec: &BasisSpec) -> ComplexMatrix {
    let cols = spec.degree + 1;
    let mut m = ComplexMatrix::zeros(points.len(), cols);
    for (i, &z) in points.iter().enumerate() {
        let w = (z - spec.center) / spec.scale;
        let row = m.row_mut(i);
        let mut p = Complex64::new(1.0, 0.0);
        row[0] = p;
        for r in row.iter_mut().skip(1) {
            p *= w;
            *r = p;
        }
    }
    m
}

/// A basis made discretely orthonormal over a source point set.
#[derive(Debug, Clone)]
pub struct OrthoBasis {
    spec: BasisSpec,
    r_inv: ComplexMatrix,
    q: ComplexMatrix,
    points: Vec<Complex64>,
}

impl OrthoBasis {
    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    /// Explicit inverse of the combined triangular factor:
    /// `pi(z) = q(z) * r_inv` row-wise.
    pub fn r_inv(&self) -> &ComplexMatrix {
        &self.r_inv
    }

    /// Orthonormal Vandermonde on the source points (`q[i][k] = pi_k(z_i)`).
    pub fn orthonormal_rows(&self) -> &ComplexMatrix {
        &self.q
    }

    pub fn source_points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.spec.degree
    }

    /// Values `pi_1(z)..pi_{n+1}(z)`.
    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        let q = self.spec.eval(z);
        let n1 = self.spec.degree + 1;
        let mut out = vec![Complex64::new(0.0, 0.0); n1];
        for (k, &qk) in q.iter().enumerate() {
            let row = self.r_inv.row(k);
            for (o, &r) in out.iter_mut().zip(row) {
                *o += qk * r;
            }
        }
        out
    }

    /// Matrix `[pi_k(z_i)]` at arbitrary points, computed as `V_q * R^{-1}`.
    pub fn eval_matrix(&self, points: &[Complex64]) -> ComplexMatrix {
        vandermonde(points, &self.spec).matmul(&self.r_inv)
    }

    /// Infinity norm of `Q^H Q - I`, a diagnostic for the conditioning of the
    /// orthonormalized Vandermonde.
    pub fn gram_defect(&self) -> f64 {
        gram_defect_of(&self.q)
    }
}

fn gram_defect_of(q: &ComplexMatrix) -> f64 {
    let gram = q.hermitian().matmul(q);
    linalg::inf_norm_rows(&gram.sub(&ComplexMatrix::identity(q.cols())))
}

/// Orthonormalizes the shifted-scaled basis over `points` by QR, repeating
/// the factorization once if the first pass leaves an orthogonality defect
/// above `ORTHO_TOL` ("twice is enough").
pub fn orthonormalize(points: &[Complex64], degree: usize) -> Result<OrthoBasis, BasisError> {
    let spec = basis_spec(points, degree)?;
    orthonormalize_with_spec(points, spec)
}

/// Same as [`orthonormalize`] but with a caller-fixed basis spec.
pub fn orthonormalize_with_spec(
    points: &[Complex64],
    spec: BasisSpec,
) -> Result<OrthoBasis, BasisError> {
    let n1 = spec.degree + 1;
    if points.len() < n1 {
        return Err(BasisError::TooFewPoints { needed: n1, got: points.len() });
    }
    let v = vandermonde(points, &spec);
    let (mut q, mut r) = linalg::qr_householder(&v)?;
    if gram_defect_of(&q) > ORTHO_TOL {
        let (q2, r2) = linalg::qr_householder(&q)?;
        r = r2.matmul(&r);
        q = q2;
    }
    let r_inv = linalg::upper_inverse(&r)?;
    Ok(OrthoBasis { spec, r_inv, q, points: points.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spec_of_two_points() {
        let s = basis_spec(&[c(0.0, 0.0), c(2.0, 0.0)], 3).unwrap();
        assert_eq!(s.center, c(1.0, 0.0));
        assert_eq!(s.scale, 1.0);
    }

    #[test]
    fn spec_of_fourth_roots_of_unity() {
        let pts = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let s = basis_spec(&pts, 2).unwrap();
        assert!(s.center.norm() < 1e-16);
        assert!((s.scale - 1.0).abs() < 1e-15);
    }

    #[test]
    fn spec_of_three_points_matches_arithmetic() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        let s = basis_spec(&pts, 1).unwrap();
        let zb = c(1.0 / 3.0, 1.0 / 3.0);
        assert!((s.center - zb).norm() < 1e-15);
        let d = pts.iter().map(|z| (z - zb).norm()).fold(0.0f64, f64::max);
        assert!((s.scale - d).abs() < 1e-15);
    }

    #[test]
    fn coincident_points_are_degenerate() {
        let pts = [c(2.0, 1.0), c(2.0, 1.0)];
        assert_eq!(basis_spec(&pts, 1), Err(BasisError::DegenerateGeometry));
    }

    #[test]
    fn vandermonde_row_at_center_is_e1() {
        let spec = BasisSpec::new(c(1.0, 1.0), 2.0, 3).unwrap();
        let v = vandermonde(&[c(1.0, 1.0)], &spec);
        assert_eq!(v.row(0), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn vandermonde_row_on_scale_circle_has_unit_moduli() {
        let spec = BasisSpec::new(c(0.0, 0.0), 2.0, 4).unwrap();
        let v = vandermonde(&[c(0.0, 2.0)], &spec);
        for &e in v.row(0) {
            assert!((e.norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn classic_monomial_vandermonde() {
        let spec = BasisSpec::new(c(0.0, 0.0), 1.0, 2).unwrap();
        let v = vandermonde(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &spec);
        assert_eq!(v.row(0), &[c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(v.row(1), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(v.row(2), &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn two_point_orthonormalization_is_exact() {
        let pts = [c(-1.0, 0.0), c(-0.2, 0.0), c(0.7, 0.0)];
        let ob = orthonormalize(&pts, 1).unwrap();
        assert!(ob.gram_defect() < 1e-14);
        // pi_1 constant, pi_2 proportional to (z - mean).
        let v0 = ob.eval(pts[0]);
        let v1 = ob.eval(pts[1]);
        assert!((v0[0] - v1[0]).norm() < 1e-14);
    }

    #[test]
    fn equispaced_circle_gives_diagonal_r() {
        // Columns of the monomial Vandermonde at M equispaced points on the
        // unit circle are exactly orthogonal with norm sqrt(M).
        let m = 16usize;
        let pts: Vec<Complex64> =
            (0..m).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / m as f64)).collect();
        let spec = BasisSpec::new(c(0.0, 0.0), 1.0, 5).unwrap();
        let ob = orthonormalize_with_spec(&pts, spec).unwrap();
        let sqrt_m = (m as f64).sqrt();
        // R diagonal = sqrt(M) means R^{-1} diagonal = 1/sqrt(M), off-diagonal ~ 0.
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j { 1.0 / sqrt_m } else { 0.0 };
                assert!(
                    (ob.r_inv().get(i, j).norm() - expect).abs() < 1e-12,
                    "r_inv[{i}][{j}] = {:?}",
                    ob.r_inv().get(i, j)
                );
            }
        }
    }

    #[test]
    fn rank_deficiency_names_failing_degree() {
        // Three distinct points cannot support degree 3.
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)];
        match orthonormalize(&pts, 3) {
            Err(BasisError::RankDeficient { degree }) => assert_eq!(degree, 3),
            other => panic!("expected rank deficiency, got {other:?}"),
        }
    }

    #[test]
    fn eval_matrix_matches_orthonormal_rows_on_source_points() {
        let pts: Vec<Complex64> =
            (0..40).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / 40.0) + c(0.3, 0.1)).collect();
        let ob = orthonormalize(&pts, 10).unwrap();
        let v = ob.eval_matrix(&pts);
        let diff = v.sub(ob.orthonormal_rows());
        assert!(linalg::inf_norm_rows(&diff) < 1e-9);
    }
}
