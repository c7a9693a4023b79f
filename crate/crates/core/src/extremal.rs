//! Extraction of Fekete-like and Leja-like interpolation nodes from
//! admissible meshes by deterministic greedy factorizations.
//!
//! Approximate Fekete points come from QR with column pivoting applied to the
//! transposed Vandermonde (greedy determinant-modulus maximization); discrete
//! Leja points from LU with row pivoting (greedy maximization of the product
//! of distances to the nodes already chosen); pseudo-Leja points from the
//! explicit greedy iteration over a nested family of meshes. All extractions
//! run in the basis orthonormalized over their extraction mesh, which keeps
//! the pivoting decisions meaningful well past degree 20.

use crate::basis::{self, BasisError, OrthoBasis};
use crate::geometry::Boundary;
use crate::linalg;
use crate::mesh::{boundary_mesh, Mesh, MeshError, MeshParams, PointKind};
use num_complex::Complex64;
use std::fmt;

/// Caps for the exhaustive Fekete search.
pub const BRUTE_FORCE_MAX_POINTS: usize = 20;
pub const BRUTE_FORCE_MAX_DEGREE: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum ExtractError {
    /// The mesh cannot support the requested degree.
    TooFewPoints { needed: usize, got: usize },
    /// Factorization found the mesh Vandermonde numerically rank deficient.
    RankDeficient { detail: String },
    /// Exhaustive search refused: instance beyond the hard size caps.
    BruteForceTooLarge { points: usize, degree: usize },
    /// First-node index outside the candidate list.
    BadFirstIndex { first: usize, len: usize },
    /// All remaining candidates coincide with already selected nodes.
    DegenerateCandidates,
    Mesh(MeshError),
    Basis(BasisError),
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewPoints { needed, got } => {
                write!(f, "extraction needs {needed} mesh points, got {got}")
            }
            Self::RankDeficient { detail } => write!(f, "mesh Vandermonde rank deficient: {detail}"),
            Self::BruteForceTooLarge { points, degree } => write!(
                f,
                "exhaustive Fekete search limited to {BRUTE_FORCE_MAX_POINTS} points and degree {BRUTE_FORCE_MAX_DEGREE}, got {points} points at degree {degree}"
            ),
            Self::BadFirstIndex { first, len } => {
                write!(f, "first index {first} out of range for {len} points")
            }
            Self::DegenerateCandidates => {
                write!(f, "every candidate coincides with a selected node")
            }
            Self::Mesh(e) => write!(f, "{e}"),
            Self::Basis(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ExtractError {}

impl From<MeshError> for ExtractError {
    fn from(e: MeshError) -> Self {
        Self::Mesh(e)
    }
}

impl From<BasisError> for ExtractError {
    fn from(e: BasisError) -> Self {
        Self::Basis(e)
    }
}

/// Node family selected by an extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ApproximateFekete,
    DiscreteLeja,
    PseudoLeja,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ApproximateFekete => "afp",
            Self::DiscreteLeja => "leja",
            Self::PseudoLeja => "pleja",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "afp" => Some(Self::ApproximateFekete),
            "leja" => Some(Self::DiscreteLeja),
            "pleja" => Some(Self::PseudoLeja),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Metadata of the mesh(es) a node set was extracted from.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceMeta {
    pub boundary_label: String,
    pub factor: f64,
    pub kind: PointKind,
}

/// An ordered set of `n + 1` interpolation nodes in selection order.
///
/// `mesh_indices[i]` is the position of node `i` within its source mesh; for
/// pseudo-Leja nodes the source of node `i` is the mesh of degree `max(1, i)`.
#[derive(Debug, Clone)]
pub struct NodeSet {
    pub family: Family,
    pub degree: usize,
    pub nodes: Vec<Complex64>,
    pub mesh_indices: Vec<usize>,
    pub source: SourceMeta,
    /// Basis orthonormalized over the extraction mesh (for pseudo-Leja, over
    /// the final degree-`n` mesh; absent for externally supplied nodes).
    /// Downstream projection operators stage their orthonormalization on it.
    pub basis: Option<OrthoBasis>,
}

impl NodeSet {
    /// Wraps externally chosen nodes (used for reference node sets such as
    /// Chebyshev extrema, and for the degree-0 edge case).
    pub fn from_points(
        nodes: Vec<Complex64>,
        degree: usize,
        family: Family,
        boundary_label: impl Into<String>,
    ) -> Result<Self, ExtractError> {
        if nodes.len() != degree + 1 {
            return Err(ExtractError::TooFewPoints { needed: degree + 1, got: nodes.len() });
        }
        let mesh_indices = (0..nodes.len()).collect();
        Ok(Self {
            family,
            degree,
            nodes,
            mesh_indices,
            source: SourceMeta {
                boundary_label: boundary_label.into(),
                factor: f64::NAN,
                kind: PointKind::Zeros,
            },
            basis: None,
        })
    }

    /// Attaches a stage-one basis (normally from the evaluation mesh) so
    /// projection operators built on externally supplied nodes can stage
    /// their orthonormalization the same way extracted node sets do.
    pub fn with_basis(mut self, basis: OrthoBasis) -> Self {
        self.basis = Some(basis);
        self
    }

    /// Checks numerical unisolvence: QR of the node Vandermonde (in the
    /// nodes' own shifted-scaled basis) has no diagonal entry below
    /// `1e-12 * |R_11|`.
    pub fn is_unisolvent(&self) -> bool {
        if self.degree == 0 {
            return self.nodes.len() == 1;
        }
        let spec = match basis::basis_spec(&self.nodes, self.degree) {
            Ok(s) => s,
            Err(_) => return false,
        };
        let v = basis::vandermonde(&self.nodes, &spec);
        match linalg::qr_householder(&v) {
            Ok((_, r)) => {
                let r11 = r.get(0, 0).norm();
                (0..r.rows()).all(|k| r.get(k, k).norm() >= 1e-12 * r11)
            }
            Err(_) => false,
        }
    }
}

fn check_size(available: usize, degree: usize) -> Result<(), ExtractError> {
    if available < degree + 1 {
        return Err(ExtractError::TooFewPoints { needed: degree + 1, got: available });
    }
    Ok(())
}

/// Greedy determinant-maximizing indices: QR with column pivoting on the
/// transposed orthonormal-basis Vandermonde of `points`. Returns the pivot
/// order and the basis used.
pub fn select_fekete_indices(
    points: &[Complex64],
    degree: usize,
) -> Result<(Vec<usize>, OrthoBasis), ExtractError> {
    check_size(points.len(), degree)?;
    let ob = basis::orthonormalize(points, degree)?;
    let transposed = ob.orthonormal_rows().transpose();
    let pqr = linalg::qr_column_pivot(&transposed).map_err(|e| ExtractError::RankDeficient {
        detail: e.to_string(),
    })?;
    Ok((pqr.perm[..degree + 1].to_vec(), ob))
}

/// Greedy distance-product indices: LU with row pivoting on the
/// orthonormal-basis Vandermonde. Returns the pivot order and the basis used.
pub fn select_leja_indices(
    points: &[Complex64],
    degree: usize,
) -> Result<(Vec<usize>, OrthoBasis), ExtractError> {
    check_size(points.len(), degree)?;
    let ob = basis::orthonormalize(points, degree)?;
    let plu = linalg::lu_row_pivot(ob.orthonormal_rows()).map_err(|e| {
        ExtractError::RankDeficient { detail: e.to_string() }
    })?;
    Ok((plu.perm[..degree + 1].to_vec(), ob))
}

/// Approximate Fekete points of degree `n` extracted from `mesh`.
pub fn approximate_fekete(mesh: &Mesh, degree: usize) -> Result<NodeSet, ExtractError> {
    let (indices, ob) = select_fekete_indices(mesh.points(), degree)?;
    Ok(node_set_from_mesh(mesh, degree, Family::ApproximateFekete, indices, Some(ob)))
}

/// Discrete Leja points of degree `n` extracted from `mesh`.
pub fn discrete_leja(mesh: &Mesh, degree: usize) -> Result<NodeSet, ExtractError> {
    let (indices, ob) = select_leja_indices(mesh.points(), degree)?;
    Ok(node_set_from_mesh(mesh, degree, Family::DiscreteLeja, indices, Some(ob)))
}

fn node_set_from_mesh(
    mesh: &Mesh,
    degree: usize,
    family: Family,
    indices: Vec<usize>,
    basis: Option<OrthoBasis>,
) -> NodeSet {
    let nodes = indices.iter().map(|&i| mesh.points()[i]).collect();
    NodeSet {
        family,
        degree,
        nodes,
        mesh_indices: indices,
        source: SourceMeta {
            boundary_label: mesh.boundary_label().to_string(),
            factor: mesh.params().factor,
            kind: mesh.params().kind,
        },
        basis,
    }
}

/// Pseudo-Leja sequence of degree `n` on a boundary: the first node is the
/// point of the degree-1 mesh with maximal imaginary part (ties: maximal real
/// part, then lowest mesh index); node `j` then maximizes the product of
/// distances to the previous nodes over the degree-`(j-1)` mesh. Products are
/// compared in log-modulus form.
pub fn pseudo_leja(
    boundary: &Boundary,
    degree: usize,
    factor: f64,
    kind: PointKind,
) -> Result<NodeSet, ExtractError> {
    let mesh_for = |d: usize| -> Result<Mesh, ExtractError> {
        Ok(boundary_mesh(boundary, MeshParams::with_kind(d, factor, kind)?)?)
    };

    let first_mesh = mesh_for(1)?;
    let mut best = 0usize;
    for (i, z) in first_mesh.points().iter().enumerate().skip(1) {
        let b = first_mesh.points()[best];
        if z.im > b.im || (z.im == b.im && z.re > b.re) {
            best = i;
        }
    }
    let mut nodes = vec![first_mesh.points()[best]];
    let mut indices = vec![best];
    let mut last_mesh = first_mesh;

    for j in 1..=degree {
        let mesh_j = mesh_for(j)?;
        let mut best_idx: Option<usize> = None;
        let mut best_log = f64::NEG_INFINITY;
        for (i, &z) in mesh_j.points().iter().enumerate() {
            let mut log_prod = 0.0f64;
            for &xi in &nodes {
                let d = (z - xi).norm();
                if d == 0.0 {
                    log_prod = f64::NEG_INFINITY;
                    break;
                }
                log_prod += d.ln();
            }
            if log_prod > best_log {
                best_log = log_prod;
                best_idx = Some(i);
            }
        }
        match best_idx {
            Some(i) => {
                nodes.push(mesh_j.points()[i]);
                indices.push(i);
            }
            None => return Err(ExtractError::DegenerateCandidates),
        }
        last_mesh = mesh_j;
    }

    let ob = basis::orthonormalize(last_mesh.points(), degree)?;
    Ok(NodeSet {
        family: Family::PseudoLeja,
        degree,
        nodes,
        mesh_indices: indices,
        source: SourceMeta {
            boundary_label: boundary.label().to_string(),
            factor,
            kind,
        },
        basis: Some(ob),
    })
}

/// Literal greedy Leja selection over a fixed point list: starting from
/// `first`, each step takes the point maximizing the plain product of
/// distances to the selected ones (ties: lowest index). This is the oracle
/// the LU route is validated against.
pub fn greedy_leja_oracle(
    points: &[Complex64],
    degree: usize,
    first: usize,
) -> Result<Vec<usize>, ExtractError> {
    check_size(points.len(), degree)?;
    if first >= points.len() {
        return Err(ExtractError::BadFirstIndex { first, len: points.len() });
    }
    let mut selected = vec![first];
    while selected.len() < degree + 1 {
        let mut best_idx: Option<usize> = None;
        let mut best_prod = 0.0f64;
        for (i, &z) in points.iter().enumerate() {
            if selected.contains(&i) {
                continue;
            }
            let prod: f64 = selected.iter().map(|&s| (z - points[s]).norm()).product();
            if best_idx.is_none() || prod > best_prod {
                best_idx = Some(i);
                best_prod = prod;
            }
        }
        match best_idx {
            Some(i) => selected.push(i),
            None => return Err(ExtractError::DegenerateCandidates),
        }
    }
    Ok(selected)
}

/// Exhaustive discrete Fekete search: the `n + 1`-subset of `points`
/// maximizing the determinant modulus of the orthonormal-basis Vandermonde.
/// Ties go to the lexicographically smallest index tuple. Refuses instances
/// beyond 20 points or degree 4.
pub fn brute_force_fekete(points: &[Complex64], degree: usize) -> Result<Vec<usize>, ExtractError> {
    if points.len() > BRUTE_FORCE_MAX_POINTS || degree > BRUTE_FORCE_MAX_DEGREE {
        return Err(ExtractError::BruteForceTooLarge { points: points.len(), degree });
    }
    check_size(points.len(), degree)?;
    let ob = basis::orthonormalize(points, degree)?;
    let q = ob.orthonormal_rows();
    let k = degree + 1;
    let mut combo: Vec<usize> = (0..k).collect();
    let mut best = combo.clone();
    let mut best_det = subset_det_modulus(q, &combo);
    loop {
        if !next_combination(&mut combo, points.len()) {
            break;
        }
        let d = subset_det_modulus(q, &combo);
        if d > best_det {
            best_det = d;
            best = combo.clone();
        }
    }
    Ok(best)
}

/// Determinant modulus of the rows `subset` of the orthonormal Vandermonde.
pub fn subset_det_modulus(q: &linalg::ComplexMatrix, subset: &[usize]) -> f64 {
    let k = subset.len();
    let sub = linalg::ComplexMatrix::from_fn(k, k, |i, j| q.get(subset[i], j));
    linalg::det_modulus(&sub)
}

/// Advances `combo` to the next k-combination of `0..n` in lexicographic
/// order; returns false after the last one.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{gallery, Arc};
    use crate::mesh::arc_mesh;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_circle() -> Boundary {
        let arc =
            Arc::trigonometric(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 1.0)], 0.0, TAU).unwrap();
        Boundary::new("circle", vec![arc]).unwrap()
    }

    #[test]
    fn oracle_on_three_points() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)];
        let order = greedy_leja_oracle(&pts, 2, 2).unwrap();
        assert_eq!(order, vec![2, 0, 1]);
    }

    #[test]
    fn oracle_on_eighth_roots_picks_antipode_second() {
        let pts: Vec<Complex64> =
            (0..8).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / 8.0)).collect();
        // index 2 is i, index 6 is -i.
        let order = greedy_leja_oracle(&pts, 3, 2).unwrap();
        assert_eq!(order[1], 6);
    }

    #[test]
    fn oracle_exhausts_all_points() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(1.0, 1.0)];
        let order = greedy_leja_oracle(&pts, 3, 0).unwrap();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
    }

    #[test]
    fn brute_force_picks_diameter_pair() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)];
        let best = brute_force_fekete(&pts, 1).unwrap();
        assert_eq!(best, vec![1, 3]);
    }

    #[test]
    fn brute_force_full_set_when_degree_matches() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        let best = brute_force_fekete(&pts, 2).unwrap();
        assert_eq!(best, vec![0, 1, 2]);
    }

    #[test]
    fn brute_force_on_circle_is_near_equilateral() {
        let pts: Vec<Complex64> =
            (0..12).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / 12.0)).collect();
        let best = brute_force_fekete(&pts, 2).unwrap();
        let gaps = [
            (best[1] - best[0]) % 12,
            (best[2] - best[1]) % 12,
            (12 + best[0] - best[2]) % 12,
        ];
        assert_eq!(gaps, [4, 4, 4], "triple {best:?} should be equilateral");
    }

    #[test]
    fn brute_force_refuses_large_instances() {
        let pts: Vec<Complex64> = (0..25).map(|j| c(j as f64, 0.0)).collect();
        assert!(matches!(
            brute_force_fekete(&pts, 1),
            Err(ExtractError::BruteForceTooLarge { .. })
        ));
    }

    #[test]
    fn afp_returns_whole_mesh_when_exact() {
        let arc = Arc::algebraic(vec![c(0.0, 0.0), c(1.0, 0.0)], -1.0, 1.0).unwrap();
        let mesh = arc_mesh(&arc, MeshParams::new(1, 2.0).unwrap()).unwrap();
        assert_eq!(mesh.len(), 2);
        let ns = approximate_fekete(&mesh, 1).unwrap();
        let mut idx = ns.mesh_indices.clone();
        idx.sort_unstable();
        assert_eq!(idx, vec![0, 1]);
    }

    #[test]
    fn afp_on_segment_clusters_at_ends() {
        let arc = Arc::algebraic(vec![c(0.0, 0.0), c(1.0, 0.0)], -1.0, 1.0).unwrap();
        let mesh = arc_mesh(&arc, MeshParams::new(10, 4.0).unwrap()).unwrap();
        let ns = approximate_fekete(&mesh, 10).unwrap();
        assert!(ns.is_unisolvent());
        let min = ns.nodes.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let max = ns.nodes.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        assert!(max > 0.95 && min < -0.95, "extreme nodes at {min}, {max}");
    }

    #[test]
    fn leja_second_node_is_farthest() {
        let arc = Arc::algebraic(vec![c(0.0, 0.0), c(1.0, 0.0)], -1.0, 1.0).unwrap();
        let mesh = arc_mesh(&arc, MeshParams::new(1, 8.0).unwrap()).unwrap();
        let ns = discrete_leja(&mesh, 1).unwrap();
        let first = ns.nodes[0];
        let dist: Vec<f64> = mesh.points().iter().map(|z| (z - first).norm()).collect();
        let best = dist
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert_eq!(ns.mesh_indices[1], best);
    }

    #[test]
    fn pseudo_leja_starts_near_i_on_circle() {
        let boundary = unit_circle();
        let ns = pseudo_leja(&boundary, 3, 8.0, PointKind::Zeros).unwrap();
        // First node: minimal distance to i (two mesh points tie exactly,
        // straddling pi/2; the pinned tie-break takes the larger real part).
        let mesh =
            boundary_mesh(&boundary, MeshParams::with_kind(1, 8.0, PointKind::Zeros).unwrap())
                .unwrap();
        let min_dist = mesh
            .points()
            .iter()
            .map(|z| (z - c(0.0, 1.0)).norm())
            .fold(f64::INFINITY, f64::min);
        assert!(((ns.nodes[0] - c(0.0, 1.0)).norm() - min_dist).abs() < 1e-15);
        assert!(ns.nodes[0].re > 0.0, "tie-break should favor the larger real part");
        // Second node roughly antipodal.
        assert!((ns.nodes[1] + ns.nodes[0]).norm() < 0.5);
    }

    #[test]
    fn pseudo_leja_is_a_nested_sequence() {
        let boundary = gallery("cardioid").unwrap();
        let long = pseudo_leja(&boundary, 9, 3.0, PointKind::Zeros).unwrap();
        let short = pseudo_leja(&boundary, 5, 3.0, PointKind::Zeros).unwrap();
        assert_eq!(&long.nodes[..6], &short.nodes[..]);
        assert_eq!(&long.mesh_indices[..6], &short.mesh_indices[..]);
    }

    #[test]
    fn extraction_is_deterministic() {
        let mesh = boundary_mesh(&gallery("lune").unwrap(), MeshParams::new(8, 4.0).unwrap()).unwrap();
        let a = approximate_fekete(&mesh, 8).unwrap();
        let b = approximate_fekete(&mesh, 8).unwrap();
        assert_eq!(a.nodes, b.nodes);
        let l1 = discrete_leja(&mesh, 8).unwrap();
        let l2 = discrete_leja(&mesh, 8).unwrap();
        assert_eq!(l1.mesh_indices, l2.mesh_indices);
    }

    #[test]
    fn too_small_mesh_is_rejected() {
        let arc = Arc::algebraic(vec![c(0.0, 0.0), c(1.0, 0.0)], -1.0, 1.0).unwrap();
        let mesh = arc_mesh(&arc, MeshParams::new(1, 2.0).unwrap()).unwrap();
        assert!(matches!(
            approximate_fekete(&mesh, 5),
            Err(ExtractError::TooFewPoints { .. })
        ));
    }
}
