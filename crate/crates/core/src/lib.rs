//! Chebyshev admissible meshes on piecewise polynomial and trigonometric
//! curves of the complex plane, extraction of Fekete-like and Leja-like
//! interpolation nodes, and Lebesgue constants with certified two-sided
//! bounds.
//!
//! The pipeline:
//!
//! 1. [`geometry`] describes a boundary as a union of parametric arcs
//!    (algebraic or trigonometric polynomials) and ships a six-domain
//!    gallery; [`boundary_io`] reads and writes user-defined boundaries.
//! 2. [`mesh`] maps Chebyshev points through each arc, producing a mesh
//!    `Z` with the norming property `||p|| <= c_m ||p||_Z` for every
//!    polynomial `p` of the requested degree, at `O(n)` cardinality.
//! 3. [`basis`] orthonormalizes the shifted-scaled monomial basis over a
//!    mesh, taming Vandermonde conditioning; [`linalg`] supplies the dense
//!    complex QR/LU kernels with pinned deterministic pivoting.
//! 4. [`extremal`] extracts approximate Fekete points (pivoted QR), discrete
//!    Leja points (pivoted LU) and pseudo-Leja sequences (explicit greedy)
//!    from meshes.
//! 5. [`projection`] builds interpolation and least-squares operators and
//!    evaluates their Lebesgue constants on meshes, certified within the
//!    factor `c_m`.
//! 6. [`tables`] serializes meshes, node sets and Lebesgue tables as CSV or
//!    JSON.

pub mod basis;
pub mod boundary_io;
pub mod extremal;
pub mod geometry;
pub mod linalg;
pub mod mesh;
pub mod projection;
pub mod tables;

pub use basis::{basis_spec, orthonormalize, vandermonde, BasisSpec, OrthoBasis};
pub use boundary_io::{load_boundary, save_boundary};
pub use extremal::{
    approximate_fekete, brute_force_fekete, discrete_leja, greedy_leja_oracle, pseudo_leja,
    Family, NodeSet,
};
pub use geometry::{gallery, Arc, Boundary, GALLERY_NAMES};
pub use linalg::{
    inf_norm_rows, lu_row_pivot, qr_column_pivot, qr_householder, solve_upper, ComplexMatrix,
};
pub use mesh::{
    arc_mesh, boundary_mesh, chebyshev_points, map_algebraic, map_trigonometric, norming_constant,
    Mesh, MeshParams, PointKind,
};
pub use projection::{
    certified_interval, lebesgue_constant, make_interpolant, make_least_squares, LebesgueReport,
    ProjectionOperator,
};
