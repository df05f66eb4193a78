//! Seeded random generators for states, unitaries and subnormalized operators.
//!
//! All experiment drivers derive their streams from a single `u64` seed, so a
//! rerun with the same seed reproduces every draw regardless of thread
//! scheduling.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::matrix::{cr, eigvalsh, hermitize, identity, outer, CMat, CVec};

/// Deterministic RNG for stream `stream` of the experiment seeded by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn std_normal(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    DMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(std_normal(rng), std_normal(rng)) * cr(std::f64::consts::FRAC_1_SQRT_2)
    })
}

/// Haar-like random unitary from QR of a Ginibre matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> CMat {
    super::matrix::orthonormalize_columns(&ginibre(rng, dim, dim))
}

/// Normalized random vector (uniform on the sphere).
pub fn random_pure_vector(rng: &mut impl Rng, dim: usize) -> CVec {
    let g = ginibre(rng, dim, 1);
    let v = g.column(0).clone_owned();
    let n = v.norm();
    v.unscale(n)
}

/// Random density matrix from the Hilbert-Schmidt measure: GG*/Tr(GG*).
pub fn random_density(rng: &mut impl Rng, dim: usize) -> CMat {
    let g = ginibre(rng, dim, dim);
    let w = &g * g.adjoint();
    let t = super::matrix::trace_re(&w);
    hermitize(&w.scale(1.0 / t))
}

/// Random pure density matrix.
pub fn random_pure_density(rng: &mut impl Rng, dim: usize) -> CMat {
    outer(&random_pure_vector(rng, dim))
}

/// Random full-rank density matrix: Hilbert-Schmidt draw mixed with a little
/// of the maximally mixed state so the smallest eigenvalue stays well above
/// the full-rank floor.
pub fn random_full_rank_density(rng: &mut impl Rng, dim: usize) -> CMat {
    let rho = random_density(rng, dim);
    let mixed = identity(dim).scale(1.0 / dim as f64);
    let eps = 0.05;
    let out = rho.scale(1.0 - eps) + mixed.scale(eps);
    debug_assert!(eigvalsh(&out).last().copied().unwrap_or(0.0) > 1e-6);
    out
}

/// Random subnormalized PSD operator with trace uniform in (0, 1].
pub fn random_trace_class(rng: &mut impl Rng, dim: usize) -> CMat {
    let t: f64 = rng.random::<f64>().max(1e-3);
    random_density(rng, dim).scale(t)
}
