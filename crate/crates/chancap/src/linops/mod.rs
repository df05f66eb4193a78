//! Hermitian operator algebra and the entropic functionals.
//!
//! The central types are [`TraceClassOperator`] (positive semidefinite,
//! trace at most one) and [`State`] (trace one). Both are Hermitized on
//! construction and validated once; every function downstream may then
//! assume the invariants. Entropies use the natural logarithm throughout;
//! display conversion to bits is left to callers.
//!
//! Infinite values are represented by `f64::INFINITY` and propagated
//! explicitly; they arise only from relative entropies of operators with
//! incompatible supports.

pub mod io;
pub mod matrix;
pub mod random;

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use matrix::{CMat, CVec, EIG_CUTOFF, HERM_TOL, PSD_TOL};

/// Tolerance on |trace - 1| for states.
pub const STATE_TRACE_TOL: f64 = 1e-10;

/// Positive semidefinite operator with trace in [0, 1].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "io::OperatorJson", into = "io::OperatorJson")]
pub struct TraceClassOperator {
    mat: CMat,
}

impl TraceClassOperator {
    /// Validating constructor: Hermitian within `1e-10`, eigenvalues above
    /// `-1e-10`, trace in `[0, 1 + 1e-10]`. The stored matrix is the
    /// Hermitian part of the input.
    pub fn new(mat: CMat) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let defect = matrix::hermitian_defect(&mat);
        if defect > HERM_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let mat = matrix::hermitize(&mat);
        let vals = matrix::eigvalsh(&mat);
        if let Some(&min) = vals.last() {
            if min < -PSD_TOL {
                return Err(Error::NotPositive { min_eig: min });
            }
        }
        let trace = matrix::trace_re(&mat);
        if !(-PSD_TOL..=1.0 + PSD_TOL).contains(&trace) {
            return Err(Error::TraceOutOfRange { trace });
        }
        Ok(Self { mat })
    }

    /// Fast path for matrices that satisfy the invariants by construction
    /// (channel outputs, convex mixtures, projections of valid operators).
    /// Only the Hermitian part is taken; no spectral validation runs.
    pub(crate) fn trusted(mat: CMat) -> Self {
        Self {
            mat: matrix::hermitize(&mat),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            mat: CMat::zeros(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        matrix::trace_re(&self.mat)
    }

    /// Eigenvalues sorted descending, negatives clipped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        matrix::eigvalsh(&self.mat)
            .into_iter()
            .map(|v| v.max(0.0))
            .collect()
    }

    pub fn is_state(&self) -> bool {
        (self.trace() - 1.0).abs() <= STATE_TRACE_TOL
    }
}

/// Density operator: a [`TraceClassOperator`] with unit trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "io::OperatorJson", into = "io::OperatorJson")]
pub struct State {
    op: TraceClassOperator,
}

impl State {
    pub fn new(mat: CMat) -> Result<Self> {
        Self::from_operator(TraceClassOperator::new(mat)?)
    }

    pub fn from_operator(op: TraceClassOperator) -> Result<Self> {
        let trace = op.trace();
        if (trace - 1.0).abs() > STATE_TRACE_TOL {
            return Err(Error::TraceOutOfRange { trace });
        }
        Ok(Self { op })
    }

    /// Pure state |v><v| / <v|v>.
    pub fn pure(v: &CVec) -> Result<Self> {
        let n = v.norm();
        if n < 1e-12 {
            return Err(Error::InvalidArgument {
                reason: "zero vector cannot be normalized to a pure state".into(),
            });
        }
        let w = v.unscale(n);
        Ok(Self {
            op: TraceClassOperator::trusted(matrix::outer(&w)),
        })
    }

    pub(crate) fn trusted(mat: CMat) -> Self {
        Self {
            op: TraceClassOperator::trusted(mat),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: TraceClassOperator::trusted(matrix::identity(dim).scale(1.0 / dim as f64)),
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        Self {
            op: TraceClassOperator::trusted(matrix::outer(&matrix::basis_vector(dim, i))),
        }
    }

    pub fn as_operator(&self) -> &TraceClassOperator {
        &self.op
    }

    pub fn into_operator(self) -> TraceClassOperator {
        self.op
    }

    /// Largest eigenvalue within 1e-9 of one.
    pub fn is_pure(&self) -> bool {
        self.op.eigenvalues().first().copied().unwrap_or(0.0) >= 1.0 - 1e-9
    }
}

impl Deref for State {
    type Target = TraceClassOperator;

    fn deref(&self) -> &TraceClassOperator {
        &self.op
    }
}

/// Which tensor factor a partial trace keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    First,
    Second,
}

fn eta_raw(x: f64) -> f64 {
    if x <= EIG_CUTOFF {
        0.0
    } else {
        -x * x.ln()
    }
}

/// eta(x) = -x ln x on [0, 1], with eta(0) = eta(1) = 0.
pub fn eta(x: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::OutOfDomain {
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(eta_raw(x.clamp(0.0, 1.0)))
}

/// Binary entropy h2(x) = eta(x) + eta(1 - x) in nats.
pub fn h2(x: f64) -> Result<f64> {
    eta(x)?;
    let x = x.clamp(0.0, 1.0);
    Ok(eta_raw(x) + eta_raw(1.0 - x))
}

/// Von Neumann entropy S(A) = -Tr A ln A extended to subnormalized operators.
pub fn entropy_s(a: &TraceClassOperator) -> f64 {
    a.eigenvalues().into_iter().map(eta_raw).sum()
}

/// Extended entropy H(A) = S(A) - eta(Tr A). Coincides with S on states and
/// is homogeneous of degree one on the subnormalized cone.
pub fn entropy_h(a: &TraceClassOperator) -> f64 {
    entropy_s(a) - eta_raw(a.trace().clamp(0.0, 1.0))
}

/// Relative entropy Tr(A ln A - A ln B + B - A), evaluated in the eigenbasis
/// of `A`. Returns `f64::INFINITY` when the support of `A` is not contained
/// in the support of `B` (supports at eigenvalue cutoff 1e-12).
pub fn relative_entropy(a: &TraceClassOperator, b: &TraceClassOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let (avals, avecs) = matrix::eigh(a.matrix());
    let (bvals, bvecs) = matrix::eigh(b.matrix());

    // mass of A on the kernel of B decides finiteness
    let mut kernel_mass = 0.0;
    for (j, &bv) in bvals.iter().enumerate() {
        if bv > EIG_CUTOFF {
            continue;
        }
        let col = bvecs.column(j);
        let mut m = 0.0;
        for (i, &av) in avals.iter().enumerate() {
            if av <= EIG_CUTOFF {
                continue;
            }
            let overlap: num_complex::Complex64 = avecs.column(i).dotc(&col);
            m += av * overlap.norm_sqr();
        }
        kernel_mass += m;
    }
    if kernel_mass > 1e-9 {
        return Ok(f64::INFINITY);
    }

    let mut value = b.trace() - a.trace();
    for (i, &av) in avals.iter().enumerate() {
        if av <= EIG_CUTOFF {
            continue;
        }
        value += av * av.ln();
        let mut mean_ln_b = 0.0;
        for (j, &bv) in bvals.iter().enumerate() {
            if bv <= EIG_CUTOFF {
                continue;
            }
            let overlap: num_complex::Complex64 = avecs.column(i).dotc(&bvecs.column(j));
            mean_ln_b += overlap.norm_sqr() * bv.ln();
        }
        value -= av * mean_ln_b;
    }
    Ok(value)
}

/// Entropy of the `n` largest eigenvalues, renormalized:
/// `-sum_{i<=n} l_i ln l_i + s ln s` with `s` the retained mass. Equal to
/// `s * H(top-n distribution / s)` and to the full entropy once `n` covers
/// the spectrum of a state. Zero operators yield zero.
pub fn truncated_entropy(a: &TraceClassOperator, n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument {
            reason: "truncation order must be at least 1".into(),
        });
    }
    let vals = a.eigenvalues();
    let top = vals.iter().take(n);
    let s: f64 = top.clone().sum();
    if s <= EIG_CUTOFF {
        return Ok(0.0);
    }
    Ok(top.map(|&v| eta_raw(v)).sum::<f64>() - eta_raw(s))
}

/// Partial trace over one factor of a bipartite operator.
pub fn partial_trace(
    c: &TraceClassOperator,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<TraceClassOperator> {
    let m = matrix::partial_trace(c.matrix(), dims.0, dims.1, keep == Subsystem::First)?;
    Ok(TraceClassOperator::trusted(m))
}

/// Kronecker product; Tr(A (x) B) = Tr A * Tr B.
pub fn tensor(a: &TraceClassOperator, b: &TraceClassOperator) -> TraceClassOperator {
    TraceClassOperator::trusted(matrix::kron(a.matrix(), b.matrix()))
}

/// Trace distance ||A - B||_1.
pub fn trace_distance(a: &TraceClassOperator, b: &TraceClassOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(matrix::trace_norm(&(a.matrix() - b.matrix())))
}

/// Pinsker-type lower bound gap `H(rho||omega) - ||rho - omega||_1^2 / 2`,
/// nonnegative for states.
pub fn pinsker_gap(rho: &State, omega: &State) -> Result<f64> {
    let h = relative_entropy(rho, omega)?;
    if h.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let t = trace_distance(rho, omega)?;
    Ok(h - 0.5 * t * t)
}
