//! Dense complex-matrix helpers underneath the domain types.
//!
//! Everything here works on raw `DMatrix<Complex64>` values; validation and
//! the entropic functionals live one level up in [`crate::linops`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Eigenvalue cutoff defining supports and the `0 log 0 = 0` convention.
pub const EIG_CUTOFF: f64 = 1e-12;
/// Tolerance on the Hermitian defect of operator inputs.
pub const HERM_TOL: f64 = 1e-10;
/// Eigenvalues above `-PSD_TOL` are accepted and clipped to zero on read.
pub const PSD_TOL: f64 = 1e-10;

pub fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Max-abs entry of `A - A*`.
pub fn hermitian_defect(m: &CMat) -> f64 {
    let d = m - m.adjoint();
    d.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Symmetrized `(A + A*)/2`.
pub fn hermitize(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

pub fn trace_re(m: &CMat) -> f64 {
    m.diagonal().iter().map(|z| z.re).sum()
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn eigvalsh(m: &CMat) -> Vec<f64> {
    let mut vals: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Full eigendecomposition of a Hermitian matrix; eigenvalues descending,
/// eigenvector columns in matching order.
pub fn eigh(m: &CMat) -> (Vec<f64>, CMat) {
    let se = m.clone().symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].total_cmp(&se.eigenvalues[a]));
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &se.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Apply a scalar function to a Hermitian matrix through its spectrum.
/// Eigenvalues below the PSD tolerance are clipped to zero first.
pub fn hermitian_map(m: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, vecs) = eigh(m);
    let n = vals.len();
    let mut diag = CMat::zeros(n, n);
    for i in 0..n {
        diag[(i, i)] = cr(f(vals[i].max(0.0)));
    }
    &vecs * diag * vecs.adjoint()
}

/// Trace norm (sum of singular values).
pub fn trace_norm(m: &CMat) -> f64 {
    m.clone().singular_values().iter().sum()
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Partial trace of an operator on a bipartite space with factor dimensions
/// `(d_first, d_second)`, composite index `i = i1 * d_second + i2`.
pub fn partial_trace(m: &CMat, d_first: usize, d_second: usize, keep_first: bool) -> Result<CMat> {
    let d = d_first * d_second;
    if m.nrows() != d || m.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: m.nrows(),
        });
    }
    if keep_first {
        let mut out = CMat::zeros(d_first, d_first);
        for i1 in 0..d_first {
            for j1 in 0..d_first {
                let mut s = czero();
                for i2 in 0..d_second {
                    s += m[(i1 * d_second + i2, j1 * d_second + i2)];
                }
                out[(i1, j1)] = s;
            }
        }
        Ok(out)
    } else {
        let mut out = CMat::zeros(d_second, d_second);
        for i2 in 0..d_second {
            for j2 in 0..d_second {
                let mut s = czero();
                for i1 in 0..d_first {
                    s += m[(i1 * d_second + i2, i1 * d_second + j2)];
                }
                out[(i2, j2)] = s;
            }
        }
        Ok(out)
    }
}

/// Partial transpose on the second factor.
pub fn partial_transpose_second(m: &CMat, d_first: usize, d_second: usize) -> Result<CMat> {
    let d = d_first * d_second;
    if m.nrows() != d || m.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: m.nrows(),
        });
    }
    let mut out = CMat::zeros(d, d);
    for i1 in 0..d_first {
        for j1 in 0..d_first {
            for i2 in 0..d_second {
                for j2 in 0..d_second {
                    out[(i1 * d_second + j2, j1 * d_second + i2)] =
                        m[(i1 * d_second + i2, j1 * d_second + j2)];
                }
            }
        }
    }
    Ok(out)
}

/// |v><v|
pub fn outer(v: &CVec) -> CMat {
    let n = v.len();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = v[i] * v[j].conj();
        }
    }
    m
}

/// Projector onto the first `n` computational basis vectors.
pub fn basis_projector(dim: usize, n: usize) -> CMat {
    let mut p = CMat::zeros(dim, dim);
    for i in 0..n.min(dim) {
        p[(i, i)] = cr(1.0);
    }
    p
}

pub fn basis_vector(dim: usize, i: usize) -> CVec {
    let mut v = CVec::zeros(dim);
    v[i] = cr(1.0);
    v
}

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

/// Modified Gram-Schmidt orthonormalization of the columns.
///
/// Returns a matrix with orthonormal columns spanning (generically) the same
/// space. Already-orthonormal inputs are returned unchanged, which makes the
/// ensemble parameterization exactly invertible. Degenerate columns are
/// replaced by the first canonical vector not in the current span.
pub fn orthonormalize_columns(g: &CMat) -> CMat {
    let (rows, cols) = (g.nrows(), g.ncols());
    let mut q = g.clone();
    let project_out = |q: &mut CMat, c: usize, upto: usize| {
        for prev in 0..upto {
            let mut coef = czero();
            for r in 0..rows {
                coef += q[(r, prev)].conj() * q[(r, c)];
            }
            for r in 0..rows {
                let upd = coef * q[(r, prev)];
                q[(r, c)] -= upd;
            }
        }
    };
    for c in 0..cols {
        project_out(&mut q, c, c);
        let norm: f64 = q.column(c).norm();
        if norm > 1e-12 {
            for r in 0..rows {
                q[(r, c)] /= cr(norm);
            }
        } else {
            // fall back to a canonical vector outside the current span
            let mut replaced = false;
            for k in 0..rows {
                for r in 0..rows {
                    q[(r, c)] = if r == k { cr(1.0) } else { czero() };
                }
                project_out(&mut q, c, c);
                let n2: f64 = q.column(c).norm();
                if n2 > 1e-6 {
                    for r in 0..rows {
                        q[(r, c)] /= cr(n2);
                    }
                    replaced = true;
                    break;
                }
            }
            if !replaced {
                for r in 0..rows {
                    q[(r, c)] = if r == c % rows { cr(1.0) } else { czero() };
                }
            }
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_trace_of_kron_recovers_factors() {
        let a = CMat::from_row_slice(2, 2, &[cr(0.7), cr(0.1), cr(0.1), cr(0.3)]);
        let b = CMat::from_row_slice(2, 2, &[cr(0.5), czero(), czero(), cr(0.5)]);
        let c = kron(&a, &b);
        let ta = partial_trace(&c, 2, 2, true).unwrap();
        let tb = partial_trace(&c, 2, 2, false).unwrap();
        assert!((ta - &a).iter().all(|z| z.norm() < 1e-12));
        assert!((tb - &b).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn orthonormalize_is_identity_on_isometries() {
        let g = CMat::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.6, 0.0),
                Complex64::new(-0.8, 0.0),
                Complex64::new(0.8, 0.0),
                Complex64::new(0.6, 0.0),
            ],
        );
        let q = orthonormalize_columns(&g);
        assert!((q - &g).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn eigh_orders_descending_and_reconstructs() {
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                cr(0.25),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                cr(0.75),
            ],
        );
        let m = hermitize(&m);
        let (vals, vecs) = eigh(&m);
        assert!(vals[0] >= vals[1]);
        let mut rec = CMat::zeros(2, 2);
        for k in 0..2 {
            rec += outer(&vecs.column(k).clone_owned()).scale(vals[k]);
        }
        assert!((rec - &m).iter().all(|z| z.norm() < 1e-10));
    }
}
