//! Channel/state duality anchored at a full-rank reference state.
//!
//! For a reference state `sigma = sum_i l_i |i><i|` with purification
//! `|W> = sum_i sqrt(l_i) |i>|i>`, an operation `Phi` maps to the composite
//! operator `Phi (x) Id (|W><W|)` on output (x) reference. The image is
//! exactly the set of subnormalized operators whose reference reduction,
//! rescaled entrywise in the sigma eigenbasis by `1/sqrt(l_i l_j)`, stays
//! below the identity; the inverse reads a Kraus family off the spectral
//! decomposition of the composite operator.
//!
//! Convention: the reference factor of every composite operator here is
//! expressed in the eigenbasis of `sigma` (labels, not the original basis);
//! serialized values carry the eigenbasis unitary to stay unambiguous.

use serde::{Deserialize, Serialize};

use crate::channels::QuantumOperation;
use crate::error::{Error, Result};
use crate::linops::io::OperatorJson;
use crate::linops::matrix::{self, cr, CMat, CVec, EIG_CUTOFF};
use crate::linops::{State, TraceClassOperator};

/// Reference eigenvalues below this floor make the inverse construction
/// numerically unstable; the constructor rejects them.
pub const FULL_RANK_FLOOR: f64 = 1e-8;

/// Full-rank reference state with its eigendecomposition and purification.
#[derive(Debug, Clone)]
pub struct ReferenceState {
    sigma: State,
    lambdas: Vec<f64>,
    basis: CMat,
}

impl ReferenceState {
    pub fn new(sigma: State) -> Result<Self> {
        let (lambdas, basis) = matrix::eigh(sigma.matrix());
        let min = lambdas.last().copied().unwrap_or(0.0);
        if min < FULL_RANK_FLOOR {
            return Err(Error::NotFullRank {
                min_eig: min,
                floor: FULL_RANK_FLOOR,
            });
        }
        Ok(Self {
            sigma,
            lambdas,
            basis,
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new(State::maximally_mixed(dim)).expect("maximally mixed is full rank")
    }

    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    pub fn sigma(&self) -> &State {
        &self.sigma
    }

    /// Eigenvalues sorted descending; all above the full-rank floor.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// Unitary whose columns are the sigma eigenvectors, in eigenvalue order.
    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    /// Eigenvector `|i>` as a vector in the original basis.
    pub fn eigvec(&self, i: usize) -> CVec {
        self.basis.column(i).clone_owned()
    }

    /// Purification `sum_i sqrt(l_i) u_i (x) e_i` on input (x) reference,
    /// with the reference factor in eigenbasis labels.
    pub fn purification(&self) -> CVec {
        let d = self.dim();
        let mut v = CVec::zeros(d * d);
        for i in 0..d {
            let u = self.eigvec(i);
            for r in 0..d {
                v[r * d + i] = u[r] * cr(self.lambdas[i].sqrt());
            }
        }
        v
    }

    /// `sigma` expressed in its own eigenbasis: `diag(lambdas)`.
    pub fn sigma_in_eigenbasis(&self) -> CMat {
        CMat::from_fn(self.dim(), self.dim(), |i, j| {
            if i == j {
                cr(self.lambdas[i])
            } else {
                matrix::czero()
            }
        })
    }
}

/// Composite-space image of an operation under the duality.
#[derive(Debug, Clone)]
pub struct ChoiOperator {
    op: TraceClassOperator,
    reference: ReferenceState,
    dim_out: usize,
}

impl ChoiOperator {
    /// Wrap an existing composite operator after checking the membership
    /// condition against the reference.
    pub fn new(op: TraceClassOperator, reference: ReferenceState) -> Result<Self> {
        let d = reference.dim();
        if op.dim() % d != 0 {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: op.dim(),
            });
        }
        let dim_out = op.dim() / d;
        match t_sigma_membership(&op, &reference)? {
            Membership::Member => Ok(Self {
                op,
                reference,
                dim_out,
            }),
            Membership::NonMember { witness } => Err(Error::NotMember { witness }),
        }
    }

    pub fn operator(&self) -> &TraceClassOperator {
        &self.op
    }

    pub fn reference(&self) -> &ReferenceState {
        &self.reference
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn dim_in(&self) -> usize {
        self.reference.dim()
    }

    /// Reduction over the output factor, living on the reference space
    /// (eigenbasis labels).
    pub fn reference_reduction(&self) -> TraceClassOperator {
        let m = matrix::partial_trace(self.op.matrix(), self.dim_out, self.reference.dim(), false)
            .expect("composite dims consistent");
        TraceClassOperator::trusted(m)
    }

    pub fn to_json(&self) -> ChoiJson {
        ChoiJson {
            a: OperatorJson::from_matrix(self.op.matrix()),
            sigma: OperatorJson::from_matrix(self.reference.sigma().matrix()),
            basis: OperatorJson::from_matrix(self.reference.basis()),
        }
    }

    pub fn from_json(j: &ChoiJson) -> Result<Self> {
        let sigma = State::new(j.sigma.to_matrix()?)?;
        let reference = ReferenceState::new(sigma)?;
        let op = TraceClassOperator::new(j.a.to_matrix()?)?;
        Self::new(op, reference)
    }
}

/// Serialized form: composite operator, reference state and its eigenbasis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChoiJson {
    #[serde(rename = "A")]
    pub a: OperatorJson,
    pub sigma: OperatorJson,
    pub basis: OperatorJson,
}

/// Forward map: `Phi (x) Id` applied to the purification of the reference,
/// assembled blockwise as `sum_ij sqrt(l_i l_j) Phi(u_i u_j*) (x) E_ij`.
pub fn choi_of(phi: &QuantumOperation, reference: &ReferenceState) -> Result<ChoiOperator> {
    let d = reference.dim();
    if phi.dim_in() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: phi.dim_in(),
        });
    }
    let dim_out = phi.dim_out();
    let mut a = CMat::zeros(dim_out * d, dim_out * d);
    for i in 0..d {
        let ui = reference.eigvec(i);
        for j in 0..d {
            let uj = reference.eigvec(j);
            let unit = CMat::from_fn(d, d, |r, c| ui[r] * uj[c].conj());
            let block = phi.apply_matrix(&unit);
            let w = cr((reference.lambdas[i] * reference.lambdas[j]).sqrt());
            for r in 0..dim_out {
                for c in 0..dim_out {
                    a[(r * d + i, c * d + j)] += w * block[(r, c)];
                }
            }
        }
    }
    Ok(ChoiOperator {
        op: TraceClassOperator::trusted(a),
        reference: reference.clone(),
        dim_out,
    })
}

/// Membership verdict for the dual set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Membership {
    Member,
    /// Largest eigenvalue of the rescaled reference reduction; above one
    /// means no trace-nonincreasing preimage exists.
    NonMember { witness: f64 },
}

/// Test whether a composite operator lies in the image of the duality:
/// rescale the reference reduction by `1/sqrt(l_i l_j)` in the eigenbasis
/// and compare against the identity.
pub fn t_sigma_membership(
    a: &TraceClassOperator,
    reference: &ReferenceState,
) -> Result<Membership> {
    let d = reference.dim();
    if a.dim() % d != 0 {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: a.dim(),
        });
    }
    let dim_out = a.dim() / d;
    let red = matrix::partial_trace(a.matrix(), dim_out, d, false)?;
    let m = CMat::from_fn(d, d, |i, j| {
        red[(i, j)] / cr((reference.lambdas[i] * reference.lambdas[j]).sqrt())
    });
    let m = matrix::hermitize(&m);
    let max = matrix::eigvalsh(&m).first().copied().unwrap_or(0.0);
    if max <= 1.0 + 1e-9 {
        Ok(Membership::Member)
    } else {
        Ok(Membership::NonMember { witness: max })
    }
}

/// Inverse map: spectral-decompose the composite operator and build the
/// Kraus family `V_k u_i = sqrt(p_k / l_i) sum_t c^k_{ti} e_t`, where
/// `c^k_{ti}` are the components of the k-th eigenvector in the
/// output (x) reference product basis.
pub fn kraus_from_choi(a: &ChoiOperator) -> Result<QuantumOperation> {
    let d = a.dim_in();
    let dim_out = a.dim_out();
    let reference = a.reference();
    let (pis, vecs) = matrix::eigh(a.operator().matrix());

    let mut kraus = Vec::new();
    for (k, &pi) in pis.iter().enumerate() {
        if pi <= EIG_CUTOFF {
            continue;
        }
        let psi = vecs.column(k);
        // V_k in eigenbasis coordinates: (V_k)_{t i} = sqrt(pi) c_{ti} / sqrt(l_i)
        let v_eig = CMat::from_fn(dim_out, d, |t, i| {
            psi[t * d + i] * cr((pi / reference.lambdas[i]).sqrt())
        });
        // rotate the input side back to the original basis
        kraus.push(&v_eig * reference.basis().adjoint());
    }
    if kraus.is_empty() {
        kraus.push(CMat::zeros(dim_out, d));
    }
    QuantumOperation::new(kraus)
}

/// Both sides of the tail bound for members of the dual reference set:
/// mass outside the top-`n` sigma eigenvectors versus the tail of the
/// sigma spectrum. The operator is expected on the reference space in
/// eigenbasis labels, as produced by [`ChoiOperator::reference_reduction`].
pub fn truncation_tail_bound(
    a: &TraceClassOperator,
    reference: &ReferenceState,
    n: usize,
) -> Result<(f64, f64)> {
    let d = reference.dim();
    if a.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: a.dim(),
        });
    }
    if n > d {
        return Err(Error::InvalidArgument {
            reason: format!("truncation order {n} exceeds dimension {d}"),
        });
    }
    let lhs: f64 = (n..d).map(|i| a.matrix()[(i, i)].re).sum();
    let rhs: f64 = reference.lambdas[n..].iter().sum();
    Ok((lhs, rhs))
}

/// Largest trace-norm gap between the actions of two operations on the
/// matrix units of the input space; zero exactly when the operations are
/// equal as maps.
pub fn matrix_unit_distance(phi: &QuantumOperation, psi: &QuantumOperation) -> Result<f64> {
    if phi.dim_in() != psi.dim_in() || phi.dim_out() != psi.dim_out() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim_in(),
            got: psi.dim_in(),
        });
    }
    let d = phi.dim_in();
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            let unit = CMat::from_fn(d, d, |r, c| {
                if r == i && c == j {
                    cr(1.0)
                } else {
                    matrix::czero()
                }
            });
            let gap = matrix::trace_norm(&(phi.apply_matrix(&unit) - psi.apply_matrix(&unit)));
            worst = worst.max(gap);
        }
    }
    Ok(worst)
}
