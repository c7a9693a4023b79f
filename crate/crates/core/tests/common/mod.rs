//! Shared helpers for the integration suites.

use cpmesh::basis::BasisSpec;
use cpmesh::geometry::{Arc, Boundary};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random complex number with re, im uniform in [-1, 1].
pub fn random_unit_square(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Random coefficients of a degree-n polynomial in a shifted-scaled basis.
pub fn random_coeffs(rng: &mut ChaCha8Rng, degree: usize) -> Vec<Complex64> {
    (0..=degree).map(|_| random_unit_square(rng)).collect()
}

/// Horner evaluation of `sum c_j q_j(z)` in the shifted-scaled basis.
pub fn poly_eval(spec: &BasisSpec, coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let w = (z - spec.center) / spec.scale;
    let mut acc = Complex64::new(0.0, 0.0);
    for &cj in coeffs.iter().rev() {
        acc = acc * w + cj;
    }
    acc
}

pub fn max_abs_at(points: &[Complex64], f: impl Fn(Complex64) -> Complex64) -> f64 {
    points.iter().map(|&z| f(z).norm()).fold(0.0, f64::max)
}

/// Roughly `count` probe points spread uniformly in parameter over the arcs.
pub fn probe_points(boundary: &Boundary, count: usize) -> Vec<Complex64> {
    let per_arc = count.div_ceil(boundary.arcs().len());
    let mut out = Vec::with_capacity(per_arc * boundary.arcs().len());
    for arc in boundary.arcs() {
        let (a, b) = arc.interval();
        for i in 0..per_arc {
            let t = a + (b - a) * i as f64 / (per_arc - 1).max(1) as f64;
            out.push(arc.eval(t.clamp(a, b)).expect("probe parameter inside interval"));
        }
    }
    out
}

/// The segment [-1, 1] as a one-arc boundary.
pub fn segment_boundary() -> Boundary {
    let arc = Arc::algebraic(vec![c(0.0, 0.0), c(1.0, 0.0)], -1.0, 1.0).unwrap();
    Boundary::new("segment", vec![arc]).unwrap()
}

/// The unit circle as a one-arc boundary.
pub fn circle_boundary() -> Boundary {
    let arc =
        Arc::trigonometric(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 1.0)], 0.0, TAU).unwrap();
    Boundary::new("circle", vec![arc]).unwrap()
}
