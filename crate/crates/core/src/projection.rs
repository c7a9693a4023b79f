//! Interpolation and discrete least-squares projection operators, their
//! Lebesgue functions, and mesh Lebesgue constants with certified two-sided
//! bounds.
//!
//! A projection `L_n f(z) = sum_j f(xi_j) phi_j(z)` carries the Lebesgue
//! function `lambda_n(z) = sum_j |phi_j(z)|`; its maximum over an admissible
//! mesh `Z` with norming constant `c` encloses the operator norm:
//! `max_Z lambda_n <= ||L_n|| <= c * max_Z lambda_n`.
//!
//! Both operator kinds are represented through a basis orthonormalized over
//! the sample points, so `phi_j(z) = w_j * K_n(z, xi_j)` with the discrete
//! reproducing kernel `K_n(z, v) = sum_k pi_k(z) conj(pi_k(v))`; for
//! interpolation (`M = n + 1`, unit weights) these are exactly the
//! fundamental Lagrange polynomials.
//!
//! The orthonormalization is staged: a first basis comes from the extraction
//! mesh (carried by the node set) and a second triangular factor makes it
//! orthonormal over the sample points. Factoring the sample-point Vandermonde
//! of the raw shifted-scaled basis directly loses digits once its condition
//! number grows; the mesh-first staging keeps the final factor small and
//! well conditioned.

use crate::basis::{self, BasisError, OrthoBasis};
use crate::extremal::NodeSet;
use crate::linalg::{self, ComplexMatrix};
use crate::mesh::{norming_constant, Mesh, MeshError, PointKind};
use num_complex::Complex64;
use std::fmt;

/// Relative tolerance at which the two Lebesgue-constant routes must agree.
pub const ROUTE_AGREEMENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum ProjectionError {
    /// Sample values do not align with the sample points.
    SampleMismatch { expected: usize, got: usize },
    /// Node set is not unisolvent / mesh cannot support the degree.
    Unisolvence(String),
    /// Operator and evaluation mesh belong to different boundaries.
    BoundaryMismatch { op: String, mesh: String },
    /// The two Lebesgue evaluation routes disagree beyond tolerance.
    FormulaMismatch { matrix_value: f64, direct_value: f64 },
    Mesh(MeshError),
}

impl fmt::Display for ProjectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SampleMismatch { expected, got } => {
                write!(f, "expected {expected} sample values, got {got}")
            }
            Self::Unisolvence(msg) => write!(f, "unisolvence failure: {msg}"),
            Self::BoundaryMismatch { op, mesh } => {
                write!(f, "operator on {op:?} evaluated with a mesh of {mesh:?}")
            }
            Self::FormulaMismatch { matrix_value, direct_value } => write!(
                f,
                "Lebesgue routes disagree: matrix formula {matrix_value}, direct maximum {direct_value}"
            ),
            Self::Mesh(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ProjectionError {}

impl From<MeshError> for ProjectionError {
    fn from(e: MeshError) -> Self {
        Self::Mesh(e)
    }
}

impl From<BasisError> for ProjectionError {
    fn from(e: BasisError) -> Self {
        Self::Unisolvence(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionKind {
    Interpolation,
    LeastSquares,
}

impl ProjectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Interpolation => "interpolation",
            Self::LeastSquares => "least_squares",
        }
    }
}

/// A degree-`n` polynomial projection built from samples at points on a
/// boundary, evaluable anywhere in the plane.
#[derive(Debug, Clone)]
pub struct ProjectionOperator {
    kind: ProjectionKind,
    sample_points: Vec<Complex64>,
    weights: Vec<f64>,
    /// Mesh-level basis (stage one).
    stage1: OrthoBasis,
    /// Upper-triangular correction making the basis orthonormal over the
    /// sample points (stage two).
    r2_inv: ComplexMatrix,
    /// Basis values at the sample points: `q2[j][k] = pi_k(xi_j)`, columns
    /// orthonormal.
    q2: ComplexMatrix,
    coeffs: Vec<Complex64>,
    degree: usize,
    boundary_label: String,
}

impl ProjectionOperator {
    pub fn kind(&self) -> ProjectionKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn sample_points(&self) -> &[Complex64] {
        &self.sample_points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn boundary_label(&self) -> &str {
        &self.boundary_label
    }

    /// Coefficients of the projection in the operator's orthonormal basis.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Values `pi_1(z)..pi_{n+1}(z)` of the basis orthonormal over the
    /// sample points.
    pub fn basis_values(&self, z: Complex64) -> Vec<Complex64> {
        apply_upper_inverse(&self.stage1.eval(z), &self.r2_inv)
    }

    /// Value of the projected polynomial at `z`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let pi = self.basis_values(z);
        pi.iter().zip(&self.coeffs).map(|(&p, &c)| p * c).sum()
    }

    /// The generators `phi_j(z) = w_j K_n(z, xi_j)`: fundamental Lagrange
    /// polynomial values for interpolation, weighted kernel values for least
    /// squares.
    pub fn cardinal_values(&self, z: Complex64) -> Vec<Complex64> {
        let pi = self.basis_values(z);
        (0..self.sample_points.len())
            .map(|j| {
                let row = self.q2.row(j);
                let k: Complex64 = pi.iter().zip(row).map(|(&p, &r)| p * r.conj()).sum();
                k * self.weights[j]
            })
            .collect()
    }

    /// Lebesgue function `lambda_n(z) = sum_j |phi_j(z)|`.
    pub fn lebesgue_function(&self, z: Complex64) -> f64 {
        self.cardinal_values(z).iter().map(|k| k.norm()).sum()
    }
}

/// Row-vector times upper-triangular inverse, exploiting the triangular
/// zero pattern.
fn apply_upper_inverse(row: &[Complex64], r_inv: &ComplexMatrix) -> Vec<Complex64> {
    let n = r_inv.cols();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (k, &v) in row.iter().enumerate() {
        for (o, &r) in out[k..].iter_mut().zip(&r_inv.row(k)[k..]) {
            *o += v * r;
        }
    }
    out
}

/// Interpolation operator at the `n + 1` nodes of a node set.
pub fn make_interpolant(
    nodes: &NodeSet,
    samples: &[Complex64],
) -> Result<ProjectionOperator, ProjectionError> {
    if nodes.nodes.len() != nodes.degree + 1 {
        return Err(ProjectionError::Unisolvence(format!(
            "interpolation needs exactly {} nodes, got {}",
            nodes.degree + 1,
            nodes.nodes.len()
        )));
    }
    build_operator(
        ProjectionKind::Interpolation,
        &nodes.nodes,
        samples,
        nodes.degree,
        nodes.basis.clone(),
        Some(&nodes.mesh_indices),
        nodes.source.boundary_label.clone(),
    )
}

/// Discrete least-squares operator of degree `n` over a whole mesh with unit
/// weights. Coincides with interpolation when the mesh has exactly `n + 1`
/// points.
pub fn make_least_squares(
    mesh: &Mesh,
    samples: &[Complex64],
    degree: usize,
) -> Result<ProjectionOperator, ProjectionError> {
    build_operator(
        ProjectionKind::LeastSquares,
        mesh.points(),
        samples,
        degree,
        None,
        None,
        mesh.boundary_label().to_string(),
    )
}

fn build_operator(
    kind: ProjectionKind,
    points: &[Complex64],
    samples: &[Complex64],
    degree: usize,
    stage1: Option<OrthoBasis>,
    mesh_indices: Option<&[usize]>,
    boundary_label: String,
) -> Result<ProjectionOperator, ProjectionError> {
    if samples.len() != points.len() {
        return Err(ProjectionError::SampleMismatch { expected: points.len(), got: samples.len() });
    }
    let stage1 = match stage1 {
        Some(ob) if ob.degree() == degree => ob,
        _ => {
            if degree == 0 {
                let spec = basis::BasisSpec::new(points[0], 1.0, 0)?;
                basis::orthonormalize_with_spec(points, spec)?
            } else {
                basis::orthonormalize(points, degree)?
            }
        }
    };

    // Stage-one basis values at the sample points. When the node set carries
    // its extraction-mesh indices, take the orthonormal rows directly.
    let n1 = degree + 1;
    let use_rows = mesh_indices.is_some_and(|idx| {
        idx.len() == points.len()
            && idx.iter().zip(points).all(|(&i, &z)| {
                i < stage1.source_points().len() && stage1.source_points()[i] == z
            })
    });
    let v1 = if use_rows {
        let idx = mesh_indices.unwrap();
        let q1 = stage1.orthonormal_rows();
        ComplexMatrix::from_fn(points.len(), n1, |i, k| q1.get(idx[i], k))
    } else if std::ptr::eq(points, stage1.source_points())
        || points == stage1.source_points()
    {
        stage1.orthonormal_rows().clone()
    } else {
        let mut m = ComplexMatrix::zeros(points.len(), n1);
        for (i, &z) in points.iter().enumerate() {
            let row = stage1.eval(z);
            m.row_mut(i).copy_from_slice(&row);
        }
        m
    };

    // Stage two: orthonormalize over the sample points.
    let (q2, r2) = linalg::qr_householder(&v1)
        .map_err(|e| ProjectionError::Unisolvence(e.to_string()))?;
    let r2_inv =
        linalg::upper_inverse(&r2).map_err(|e| ProjectionError::Unisolvence(e.to_string()))?;

    // Columns of q2 are orthonormal over (points, unit weights):
    // the projection coefficients are q2^H * samples for both kinds.
    let coeffs = q2.hermitian().mul_vec(samples);
    let weights = vec![1.0; points.len()];
    Ok(ProjectionOperator {
        kind,
        sample_points: points.to_vec(),
        weights,
        stage1,
        r2_inv,
        q2,
        coeffs,
        degree,
        boundary_label,
    })
}

/// Certified two-sided enclosure `[value, c_m * value]` of an operator norm
/// from its mesh Lebesgue value.
pub fn certified_interval(value: f64, m: f64) -> Result<(f64, f64), MeshError> {
    let c = norming_constant(m)?;
    Ok((value, c * value))
}

/// A mesh Lebesgue value with its certified enclosure.
#[derive(Debug, Clone, PartialEq)]
pub struct LebesgueReport {
    /// Matrix-formula value of `max_Z lambda_n` (the certified lower end).
    pub value: f64,
    /// The same maximum recomputed pointwise via the Lebesgue function.
    pub direct_value: f64,
    pub lower: f64,
    pub upper: f64,
    /// `c_m - 1`, the relative width of the enclosure.
    pub relative_budget: f64,
    pub degree: usize,
    pub eval_factor: f64,
    pub eval_kind: PointKind,
    pub eval_label: String,
    pub eval_cardinality: usize,
}

/// Lebesgue constant of a projection on an admissible evaluation mesh of the
/// same boundary.
///
/// The value is computed two ways: as the infinity norm of the matrix
/// `V(Z) R^{-1} Q^H` (assembled row by row with column-major accumulation)
/// and as the direct maximum of the Lebesgue function over the mesh points.
/// They must agree to `ROUTE_AGREEMENT_TOL` relative; the report carries both
/// together with the enclosure `[value, c_m * value]`.
pub fn lebesgue_constant(
    op: &ProjectionOperator,
    eval_mesh: &Mesh,
) -> Result<LebesgueReport, ProjectionError> {
    if op.boundary_label() != eval_mesh.boundary_label() {
        return Err(ProjectionError::BoundaryMismatch {
            op: op.boundary_label().to_string(),
            mesh: eval_mesh.boundary_label().to_string(),
        });
    }

    let m_xi = op.sample_points.len();
    let n1 = op.degree + 1;
    // Rows of Q^H, i.e. conj(pi_k(xi_j)) contiguous in j for fixed k.
    let q2h = op.q2.hermitian();

    let mut matrix_value = 0.0f64;
    let mut direct_value = 0.0f64;
    let mut krow = vec![Complex64::new(0.0, 0.0); m_xi];
    for &z in eval_mesh.points() {
        let pi = op.basis_values(z);

        // Route (a): row of V(Z) R^{-1} Q^H accumulated column-major
        // (k-outer), then the row sum of moduli.
        for e in krow.iter_mut() {
            *e = Complex64::new(0.0, 0.0);
        }
        for k in 0..n1 {
            let pk = pi[k];
            for (e, &qh) in krow.iter_mut().zip(q2h.row(k)) {
                *e += pk * qh;
            }
        }
        let row_sum: f64 =
            krow.iter().zip(&op.weights).map(|(e, &w)| e.norm() * w).sum();
        matrix_value = matrix_value.max(row_sum);

        // Route (b): the Lebesgue function as the kernel sum, j-outer.
        let lam: f64 = (0..m_xi)
            .map(|j| {
                let row = op.q2.row(j);
                let k: Complex64 = pi.iter().zip(row).map(|(&p, &r)| p * r.conj()).sum();
                k.norm() * op.weights[j]
            })
            .sum();
        direct_value = direct_value.max(lam);
    }

    let denom = matrix_value.max(direct_value).max(f64::MIN_POSITIVE);
    if (matrix_value - direct_value).abs() > ROUTE_AGREEMENT_TOL * denom {
        return Err(ProjectionError::FormulaMismatch { matrix_value, direct_value });
    }

    let c = eval_mesh.norming_constant();
    Ok(LebesgueReport {
        value: matrix_value,
        direct_value,
        lower: matrix_value,
        upper: c * matrix_value,
        relative_budget: c - 1.0,
        degree: op.degree,
        eval_factor: eval_mesh.params().factor,
        eval_kind: eval_mesh.params().kind,
        eval_label: eval_mesh.boundary_label().to_string(),
        eval_cardinality: eval_mesh.len(),
    })
}
