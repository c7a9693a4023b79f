//! Dense complex linear algebra: Householder QR, QR with column pivoting,
//! LU with row pivoting, triangular solves and infinity norms.
//!
//! The kernels are deliberately self-contained and single-threaded so that
//! pivot sequences (and therefore extracted node sets) are bit-reproducible.
//! Tie-breaking is pinned everywhere: among equal pivot candidates the lowest
//! index wins.

use num_complex::Complex64;
use std::fmt;

/// Relative threshold below which a QR diagonal entry counts as rank deficient.
pub const RANK_TOL: f64 = 1e-13;

/// Relative threshold for the early stop of pivoted QR.
pub const PIVOT_TOL: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    /// A pivot or diagonal entry is (numerically) zero; carries its index.
    Singular { index: usize },
    /// Pivoted QR ran out of numerically independent columns.
    RankDeficient { rank: usize },
    /// Matrix shape violates a precondition of the operation.
    Shape(String),
    /// A non-finite entry was passed in.
    NonFinite,
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Singular { index } => write!(f, "singular matrix at pivot {index}"),
            Self::RankDeficient { rank } => write!(f, "numerical rank {rank} below requested size"),
            Self::Shape(msg) => write!(f, "shape error: {msg}"),
            Self::NonFinite => write!(f, "matrix contains a non-finite entry"),
        }
    }
}

impl std::error::Error for LinalgError {}

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from externally supplied entries, rejecting non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a contiguous slice.
    #[inline]
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Conjugate transpose.
    pub fn hermitian(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must match");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let a_row = self.row(i);
            let out_row = out.row_mut(i);
            for (k, &a) in a_row.iter().enumerate() {
                let b_row = other.row(k);
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length must match cols");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &x)| a * x).sum())
            .collect()
    }

    /// Entrywise difference, for residual checks.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn col_tail_norm(&self, j: usize, from_row: usize) -> f64 {
        (from_row..self.rows)
            .map(|i| self.get(i, j).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Thin QR with column pivoting. `a * P = q * r` where `P` permutes columns
/// into the order recorded by `perm`.
#[derive(Debug, Clone)]
pub struct PivotedQr {
    /// `rows x r`, orthonormal columns.
    pub q: ComplexMatrix,
    /// `r x cols`, upper trapezoidal with real positive diagonal.
    pub r: ComplexMatrix,
    /// `perm[j]` is the original index of pivoted column `j`.
    pub perm: Vec<usize>,
}

/// LU with partial (row) pivoting. `P * a = l * u` where `P` permutes rows
/// into the order recorded by `perm`.
#[derive(Debug, Clone)]
pub struct PivotedLu {
    /// `rows x r`, unit lower triangular with |entries| <= 1.
    pub l: ComplexMatrix,
    /// `r x r`, upper triangular.
    pub u: ComplexMatrix,
    /// `perm[i]` is the original index of pivoted row `i`.
    pub perm: Vec<usize>,
}

struct Reflector {
    /// Householder vector, acting on rows `k..rows`.
    v: Vec<Complex64>,
    beta: f64,
    k: usize,
}

impl Reflector {
    /// Builds the reflector mapping the tail of column `k` of `w` onto
    /// `-phase * norm * e_1`, and applies it to columns `k..` of `w`.
    fn eliminate(w: &mut ComplexMatrix, k: usize) -> (Self, Complex64) {
        let m = w.rows();
        let norm = w.col_tail_norm(k, k);
        let x0 = w.get(k, k);
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let mut v: Vec<Complex64> = (k..m).map(|i| w.get(i, k)).collect();
        v[0] += phase * norm;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = if vnorm2 == 0.0 { 0.0 } else { 2.0 / vnorm2 };
        let refl = Reflector { v, beta, k };
        for j in k..w.cols() {
            refl.apply_col(w, j);
        }
        // The eliminated column is known exactly.
        let rkk = -phase * norm;
        w.set(k, k, rkk);
        for i in k + 1..m {
            w.set(i, k, Complex64::new(0.0, 0.0));
        }
        (refl, rkk)
    }

    fn apply_col(&self, w: &mut ComplexMatrix, j: usize) {
        let s: Complex64 = self
            .v
            .iter()
            .enumerate()
            .map(|(i, &vi)| vi.conj() * w.get(self.k + i, j))
            .sum();
        let bs = self.beta * s;
        for (i, &vi) in self.v.iter().enumerate() {
            let cur = w.get(self.k + i, j);
            w.set(self.k + i, j, cur - bs * vi);
        }
    }
}

/// Accumulates the thin Q factor from a reflector sequence, then rescales
/// column `k` by `scales[k]` (the phase that made `R`'s diagonal positive).
fn accumulate_q(rows: usize, r: usize, reflectors: &[Reflector], scales: &[Complex64]) -> ComplexMatrix {
    let mut q = ComplexMatrix::zeros(rows, r);
    for k in 0..r {
        q.set(k, k, Complex64::new(1.0, 0.0));
    }
    for refl in reflectors.iter().rev() {
        for j in 0..r {
            refl.apply_col(&mut q, j);
        }
    }
    for (k, &s) in scales.iter().enumerate() {
        let sc = s.conj();
        for i in 0..rows {
            let cur = q.get(i, k);
            q.set(i, k, cur * sc);
        }
    }
    q
}

/// Rescales row `k` of the triangular factor so its diagonal is real positive.
/// Returns the unit phase applied to each row.
fn normalize_diag(r: &mut ComplexMatrix) -> Vec<Complex64> {
    let steps = r.rows();
    let mut scales = Vec::with_capacity(steps);
    for k in 0..steps {
        let d = r.get(k, k);
        let s = if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d.conj() / d.norm() };
        for j in k..r.cols() {
            let cur = r.get(k, j);
            r.set(k, j, cur * s);
        }
        // Clear rounding dust from the imaginary part of the diagonal.
        let dk = r.get(k, k);
        r.set(k, k, Complex64::new(dk.re, 0.0));
        scales.push(s);
    }
    scales
}

/// Thin Householder QR of a tall matrix: `a = q * r` with orthonormal `q`
/// and upper triangular `r` whose diagonal is real positive.
///
/// Fails with [`LinalgError::Singular`] at the first column whose residual
/// norm falls below `RANK_TOL` relative to the first one.
pub fn qr_householder(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix), LinalgError> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(LinalgError::Shape(format!("qr_householder needs rows >= cols, got {m}x{n}")));
    }
    let mut w = a.clone();
    let mut reflectors = Vec::with_capacity(n);
    let mut first_norm = 0.0f64;
    for k in 0..n {
        let norm = w.col_tail_norm(k, k);
        if k == 0 {
            first_norm = norm;
        }
        if norm == 0.0 || norm < RANK_TOL * first_norm {
            return Err(LinalgError::Singular { index: k });
        }
        let (refl, _) = Reflector::eliminate(&mut w, k);
        reflectors.push(refl);
    }
    let mut r = ComplexMatrix::from_fn(n, n, |i, j| if j >= i { w.get(i, j) } else { Complex64::new(0.0, 0.0) });
    let scales = normalize_diag(&mut r);
    let q = accumulate_q(m, n, &reflectors, &scales);
    Ok((q, r))
}

/// QR with column pivoting. At each step the remaining column of maximal
/// residual 2-norm is chosen; ties go to the lowest column index. Residual
/// norms are recomputed from the updated matrix each step so the pivot
/// sequence is exact and reproducible.
pub fn qr_column_pivot(a: &ComplexMatrix) -> Result<PivotedQr, LinalgError> {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return Err(LinalgError::Shape("qr_column_pivot needs a nonempty matrix".into()));
    }
    let steps = m.min(n);
    let mut w = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut reflectors = Vec::with_capacity(steps);
    let init_max = (0..n).map(|j| w.col_tail_norm(j, 0)).fold(0.0f64, f64::max);
    for k in 0..steps {
        let mut best = k;
        let mut best_norm = w.col_tail_norm(k, k);
        for j in k + 1..n {
            let nj = w.col_tail_norm(j, k);
            if nj > best_norm {
                best = j;
                best_norm = nj;
            }
        }
        if best_norm <= PIVOT_TOL * init_max {
            return Err(LinalgError::RankDeficient { rank: k });
        }
        w.swap_cols(k, best);
        perm.swap(k, best);
        let (refl, _) = Reflector::eliminate(&mut w, k);
        reflectors.push(refl);
    }
    let mut r = ComplexMatrix::from_fn(steps, n, |i, j| if j >= i { w.get(i, j) } else { Complex64::new(0.0, 0.0) });
    let scales = normalize_diag(&mut r);
    let q = accumulate_q(m, steps, &reflectors, &scales);
    Ok(PivotedQr { q, r, perm })
}

/// LU with partial row pivoting of a tall matrix. At each step the row with
/// the largest absolute entry in the current column is chosen; ties go to the
/// lowest row index.
pub fn lu_row_pivot(a: &ComplexMatrix) -> Result<PivotedLu, LinalgError> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(LinalgError::Shape(format!("lu_row_pivot needs rows >= cols, got {m}x{n}")));
    }
    let mut w = a.clone();
    let mut perm: Vec<usize> = (0..m).collect();
    for k in 0..n {
        let mut best = k;
        let mut best_abs = w.get(k, k).norm();
        for i in k + 1..m {
            let v = w.get(i, k).norm();
            if v > best_abs {
                best = i;
                best_abs = v;
            }
        }
        if best_abs == 0.0 {
            return Err(LinalgError::Singular { index: k });
        }
        w.swap_rows(k, best);
        perm.swap(k, best);
        let pivot = w.get(k, k);
        for i in k + 1..m {
            let l = w.get(i, k) / pivot;
            w.set(i, k, l);
            for j in k + 1..n {
                let cur = w.get(i, j);
                w.set(i, j, cur - l * w.get(k, j));
            }
        }
    }
    let l = ComplexMatrix::from_fn(m, n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else if i > j {
            w.get(i, j)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let u = ComplexMatrix::from_fn(n, n, |i, j| if j >= i { w.get(i, j) } else { Complex64::new(0.0, 0.0) });
    Ok(PivotedLu { l, u, perm })
}

/// Solves `r * x = b` by back substitution for upper triangular `r`.
pub fn solve_upper(r: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let n = r.rows();
    if r.cols() != n {
        return Err(LinalgError::Shape(format!("solve_upper needs a square factor, got {}x{}", n, r.cols())));
    }
    if b.rows() != n {
        return Err(LinalgError::Shape(format!("rhs has {} rows, expected {n}", b.rows())));
    }
    for k in 0..n {
        if r.get(k, k).norm() == 0.0 {
            return Err(LinalgError::Singular { index: k });
        }
    }
    let mut x = b.clone();
    for i in (0..n).rev() {
        for j in 0..b.cols() {
            let mut s = x.get(i, j);
            for k in i + 1..n {
                s -= r.get(i, k) * x.get(k, j);
            }
            x.set(i, j, s / r.get(i, i));
        }
    }
    Ok(x)
}

/// Explicit inverse of an upper triangular matrix.
pub fn upper_inverse(r: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    solve_upper(r, &ComplexMatrix::identity(r.rows()))
}

/// Induced infinity norm: the maximum over rows of the sum of entry moduli.
pub fn inf_norm_rows(a: &ComplexMatrix) -> f64 {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `|det|` of a square matrix via pivoted LU; zero when a pivot vanishes.
pub fn det_modulus(a: &ComplexMatrix) -> f64 {
    match lu_row_pivot(a) {
        Ok(plu) => (0..plu.u.rows()).map(|k| plu.u.get(k, k).norm()).product(),
        Err(_) => 0.0,
    }
}
