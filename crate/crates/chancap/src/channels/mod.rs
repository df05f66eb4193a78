//! Quantum operations in Kraus form.
//!
//! An operation is a completely positive trace-nonincreasing map given by a
//! finite Kraus family `{V_k}` with `sum V_k* V_k <= I`; equality makes it a
//! channel. Kraus lists are never canonicalized - two operations are equal
//! when they act identically on all matrix units, and tests compare actions,
//! not representations.

pub mod factory;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linops::io::MatrixJson;
use crate::linops::matrix::{self, CMat};
use crate::linops::{State, TraceClassOperator};

/// Tolerance for the Kraus-sum bound and the channel classification.
pub const KRAUS_TOL: f64 = 1e-9;

/// Classification of a Kraus family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperationKind {
    /// Trace preserving: sum V*V = I.
    Channel,
    /// Trace decreasing somewhere: sum V*V <= I but not = I.
    StrictOperation,
    /// Kraus sum exceeds the identity; not an operation at all.
    Invalid,
}

/// Classify a raw Kraus family without constructing an operation.
pub fn classify_kraus(kraus: &[CMat]) -> OperationKind {
    if kraus.is_empty() {
        return OperationKind::StrictOperation;
    }
    let dim_in = kraus[0].ncols();
    let mut k = CMat::zeros(dim_in, dim_in);
    for v in kraus {
        k += v.adjoint() * v;
    }
    let vals = matrix::eigvalsh(&k);
    let max = vals.first().copied().unwrap_or(0.0);
    if max > 1.0 + KRAUS_TOL {
        return OperationKind::Invalid;
    }
    let defect = matrix::trace_norm(&(k - matrix::identity(dim_in)));
    if defect <= KRAUS_TOL {
        OperationKind::Channel
    } else {
        OperationKind::StrictOperation
    }
}

/// Completely positive trace-nonincreasing map in Kraus form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "OperationJson", into = "OperationJson")]
pub struct QuantumOperation {
    kraus: Vec<CMat>,
    dim_in: usize,
    dim_out: usize,
}

impl QuantumOperation {
    /// Validating constructor; rejects empty or shape-inconsistent families
    /// and Kraus sums exceeding the identity.
    pub fn new(kraus: Vec<CMat>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidArgument {
                reason: "empty Kraus family".into(),
            });
        }
        let dim_out = kraus[0].nrows();
        let dim_in = kraus[0].ncols();
        for v in &kraus {
            if v.nrows() != dim_out || v.ncols() != dim_in {
                return Err(Error::DimensionMismatch {
                    expected: dim_out,
                    got: v.nrows(),
                });
            }
        }
        match classify_kraus(&kraus) {
            OperationKind::Invalid => {
                let mut k = CMat::zeros(dim_in, dim_in);
                for v in &kraus {
                    k += v.adjoint() * v;
                }
                Err(Error::KrausBound {
                    max_eig: matrix::eigvalsh(&k)[0],
                })
            }
            _ => Ok(Self {
                kraus,
                dim_in,
                dim_out,
            }),
        }
    }

    pub fn kraus(&self) -> &[CMat] {
        &self.kraus
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// Channel or strict operation (never `Invalid` for a constructed value).
    pub fn kind(&self) -> OperationKind {
        classify_kraus(&self.kraus)
    }

    pub fn is_channel(&self) -> bool {
        self.kind() == OperationKind::Channel
    }

    /// Raw Kraus action on an arbitrary matrix.
    pub fn apply_matrix(&self, m: &CMat) -> CMat {
        let mut out = CMat::zeros(self.dim_out, self.dim_out);
        for v in &self.kraus {
            out += v * m * v.adjoint();
        }
        out
    }

    /// Apply to a subnormalized operator; the output trace never exceeds the
    /// input trace.
    pub fn apply(&self, a: &TraceClassOperator) -> Result<TraceClassOperator> {
        if a.dim() != self.dim_in {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                got: a.dim(),
            });
        }
        Ok(TraceClassOperator::trusted(self.apply_matrix(a.matrix())))
    }

    /// Output-truncated operation `{P V_k}` for a projector `P`; a strict
    /// operation unless `P = I`.
    pub fn truncate_output(&self, p: &CMat) -> Result<QuantumOperation> {
        if p.nrows() != self.dim_out || p.ncols() != self.dim_out {
            return Err(Error::DimensionMismatch {
                expected: self.dim_out,
                got: p.nrows(),
            });
        }
        let herm = matrix::hermitian_defect(p);
        let idem = matrix::trace_norm(&(p * p - p));
        if herm > KRAUS_TOL || idem > KRAUS_TOL {
            return Err(Error::NotProjector {
                defect: idem.max(herm),
            });
        }
        QuantumOperation::new(self.kraus.iter().map(|v| p * v).collect())
    }

    /// Sub-operation keeping only the named Kraus operators. The result is
    /// dominated by `self` in the operator order on every input, which is
    /// the hypothesis of the monotone approximation scheme acting on the
    /// environment side of the dilation.
    pub fn kraus_subset(&self, keep: &[usize]) -> Result<QuantumOperation> {
        if keep.is_empty() {
            return Err(Error::InvalidArgument {
                reason: "empty Kraus subset".into(),
            });
        }
        let mut sel = Vec::with_capacity(keep.len());
        for &i in keep {
            let v = self.kraus.get(i).ok_or(Error::InvalidArgument {
                reason: format!("Kraus index {i} out of range"),
            })?;
            sel.push(v.clone());
        }
        QuantumOperation::new(sel)
    }

    /// Stinespring dilation `V = sum_k V_k (x) |k>` into output (x) environment,
    /// with environment dimension equal to the Kraus count.
    pub fn stinespring(&self) -> StinespringDilation {
        let d_env = self.kraus.len();
        let mut v = CMat::zeros(self.dim_out * d_env, self.dim_in);
        for (k, vk) in self.kraus.iter().enumerate() {
            for i in 0..self.dim_out {
                for j in 0..self.dim_in {
                    v[(i * d_env + k, j)] = vk[(i, j)];
                }
            }
        }
        StinespringDilation {
            isometry: v,
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            d_env,
        }
    }

    /// Complementary operation: trace out the original output of the
    /// dilation. Maps inputs to the environment space of dimension equal to
    /// the Kraus count.
    pub fn complementary(&self) -> QuantumOperation {
        let d_env = self.kraus.len();
        // row i of every V_k becomes row k of W_i
        let kraus: Vec<CMat> = (0..self.dim_out)
            .map(|i| {
                CMat::from_fn(d_env, self.dim_in, |k, j| self.kraus[k][(i, j)])
            })
            .collect();
        QuantumOperation {
            kraus,
            dim_in: self.dim_in,
            dim_out: d_env,
        }
    }

    /// Tensor product operation with Kraus family `{V_k (x) W_l}`.
    pub fn tensor_with(&self, other: &QuantumOperation) -> QuantumOperation {
        let mut kraus = Vec::with_capacity(self.kraus.len() * other.kraus.len());
        for v in &self.kraus {
            for w in &other.kraus {
                kraus.push(matrix::kron(v, w));
            }
        }
        QuantumOperation {
            kraus,
            dim_in: self.dim_in * other.dim_in,
            dim_out: self.dim_out * other.dim_out,
        }
    }

    /// Composition `self after inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &QuantumOperation) -> Result<QuantumOperation> {
        if inner.dim_out != self.dim_in {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                got: inner.dim_out,
            });
        }
        let mut kraus = Vec::with_capacity(self.kraus.len() * inner.kraus.len());
        for o in &self.kraus {
            for i in &inner.kraus {
                kraus.push(o * i);
            }
        }
        Ok(QuantumOperation {
            kraus,
            dim_in: inner.dim_in,
            dim_out: self.dim_out,
        })
    }

    /// Dual (Heisenberg) action `sum_k V_k* X V_k` on an output observable.
    pub fn dual_apply(&self, x: &CMat) -> CMat {
        let mut out = CMat::zeros(self.dim_in, self.dim_in);
        for v in &self.kraus {
            out += v.adjoint() * x * v;
        }
        out
    }
}

/// Isometric dilation of an operation into output (x) environment.
#[derive(Debug, Clone)]
pub struct StinespringDilation {
    pub isometry: CMat,
    pub dim_in: usize,
    pub dim_out: usize,
    pub d_env: usize,
}

impl StinespringDilation {
    /// `V rho V*` on the composite output (x) environment space.
    pub fn conjugate(&self, rho: &CMat) -> CMat {
        &self.isometry * rho * self.isometry.adjoint()
    }

    /// Defect `||V*V - I||_1`; near zero exactly for channels.
    pub fn isometry_defect(&self) -> f64 {
        let g = self.isometry.adjoint() * &self.isometry;
        matrix::trace_norm(&(g - matrix::identity(self.dim_in)))
    }
}

/// Max over a sample of states of `||Phi(rho) - Psi(rho)||_1`; a finite
/// surrogate for (and lower bound on) the uniform distance between two
/// operations.
pub fn strong_distance(
    phi: &QuantumOperation,
    psi: &QuantumOperation,
    sample: &[State],
) -> Result<f64> {
    if phi.dim_in != psi.dim_in || phi.dim_out != psi.dim_out {
        return Err(Error::DimensionMismatch {
            expected: phi.dim_in,
            got: psi.dim_in,
        });
    }
    if sample.is_empty() {
        return Err(Error::InvalidArgument {
            reason: "empty state sample".into(),
        });
    }
    let mut best: f64 = 0.0;
    for rho in sample {
        if rho.dim() != phi.dim_in {
            return Err(Error::DimensionMismatch {
                expected: phi.dim_in,
                got: rho.dim(),
            });
        }
        let d = matrix::trace_norm(&(phi.apply_matrix(rho.matrix()) - psi.apply_matrix(rho.matrix())));
        best = best.max(d);
    }
    Ok(best)
}

/// Curated default sample for [`strong_distance`]: the basis states, the
/// maximally mixed state and a few seeded random pure states.
pub fn default_state_sample(dim: usize, seed: u64) -> Vec<State> {
    let mut sample: Vec<State> = (0..dim).map(|i| State::basis(dim, i)).collect();
    sample.push(State::maximally_mixed(dim));
    let mut rng = crate::linops::random::rng_for(seed, 0x5a17);
    for _ in 0..8 {
        let v = crate::linops::random::random_pure_vector(&mut rng, dim);
        sample.push(State::trusted(matrix::outer(&v)));
    }
    sample
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct OperationJson {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<MatrixJson>,
}

impl TryFrom<OperationJson> for QuantumOperation {
    type Error = Error;

    fn try_from(j: OperationJson) -> Result<Self> {
        let kraus = j
            .kraus
            .iter()
            .map(|m| m.to_matrix())
            .collect::<Result<Vec<_>>>()?;
        let op = QuantumOperation::new(kraus)?;
        if op.dim_in != j.dim_in || op.dim_out != j.dim_out {
            return Err(Error::Serialization(
                "declared dimensions do not match Kraus shapes".into(),
            ));
        }
        Ok(op)
    }
}

impl From<QuantumOperation> for OperationJson {
    fn from(op: QuantumOperation) -> Self {
        OperationJson {
            dim_in: op.dim_in,
            dim_out: op.dim_out,
            kraus: op.kraus.iter().map(MatrixJson::from_matrix).collect(),
        }
    }
}
