//! Constrained capacities, energy constraints, entanglement-breaking tests
//! and additivity experiments.
//!
//! The capacity of an operation over a constraint set is the supremum of the
//! Holevo quantity over ensembles whose barycenter lies in the set. The
//! optimizer parameterizes the barycenter (hull weights or a square-root
//! chart projected into the energy ball) jointly with a full-dimension
//! decomposition chart, so every evaluated ensemble is feasible by
//! construction.

use serde::Serialize;

use crate::channels::QuantumOperation;
use crate::choi::{self, ReferenceState};
use crate::error::{Error, Result};
use crate::linops::matrix::{self, cr, CMat};
use crate::linops::{entropy_s, trace_distance, State, TraceClassOperator};
use crate::roof::{
    self, holevo_chi, ChiResult, Ensemble, MultistartOutcome, OptimizerConfig,
};

/// Constraint set for the capacity: a finite convex hull of states or an
/// energy ball `{rho : Tr H rho <= h}`.
#[derive(Debug, Clone)]
pub enum ConstraintSet {
    FiniteHull(Vec<State>),
    Energy { hamiltonian: CMat, bound: f64 },
}

impl ConstraintSet {
    pub fn finite_hull(states: Vec<State>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InfeasibleConstraint {
                reason: "empty hull".into(),
            });
        }
        let d = states[0].dim();
        if states.iter().any(|s| s.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: states.iter().map(|s| s.dim()).find(|&x| x != d).unwrap(),
            });
        }
        Ok(Self::FiniteHull(states))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::FiniteHull(states) => states[0].dim(),
            Self::Energy { hamiltonian, .. } => hamiltonian.nrows(),
        }
    }

    /// Feasibility residual of a state: zero (up to tolerance) inside the
    /// set. Hull membership is measured as the least-squares distance to the
    /// hull; the energy case measures the bound excess.
    pub fn residual(&self, rho: &State) -> f64 {
        match self {
            Self::FiniteHull(states) => hull_residual(states, rho),
            Self::Energy { hamiltonian, bound } => {
                (matrix::trace_re(&(hamiltonian * rho.matrix())) - bound).max(0.0)
            }
        }
    }

    pub fn is_feasible(&self, rho: &State, tol: f64) -> bool {
        self.residual(rho) <= tol
    }
}

/// Energy constraint `{rho : Tr H rho <= h}` for a PSD Hamiltonian; feasible
/// exactly when the bound reaches the bottom of the spectrum.
pub fn energy_ball(hamiltonian: CMat, bound: f64, dim: usize) -> Result<ConstraintSet> {
    if hamiltonian.nrows() != dim || hamiltonian.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: hamiltonian.nrows(),
        });
    }
    if matrix::hermitian_defect(&hamiltonian) > 1e-9 {
        return Err(Error::NotHermitian {
            defect: matrix::hermitian_defect(&hamiltonian),
        });
    }
    let vals = matrix::eigvalsh(&hamiltonian);
    let min = vals.last().copied().unwrap_or(0.0);
    if min < -1e-9 {
        return Err(Error::NotPositive { min_eig: min });
    }
    if bound < min - 1e-12 {
        return Err(Error::InfeasibleConstraint {
            reason: format!("bound {bound} below ground energy {min}"),
        });
    }
    Ok(ConstraintSet::Energy {
        hamiltonian: matrix::hermitize(&hamiltonian),
        bound,
    })
}

/// Euclidean projection onto the probability simplex.
fn simplex_project(v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    let mut k = 0;
    for (i, &s) in sorted.iter().enumerate() {
        cum += s;
        let t = (cum - 1.0) / (i + 1) as f64;
        if s - t > 0.0 {
            theta = t;
            k = i + 1;
        }
    }
    if k == 0 {
        return vec![1.0 / n as f64; n];
    }
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

/// Least-squares distance (Frobenius) from `rho` to the hull of `states`:
/// an exact active-set solve of the simplex-constrained quadratic in the
/// mixture weights.
fn hull_residual(states: &[State], rho: &State) -> f64 {
    use nalgebra::DMatrix;
    let m = states.len();
    let inner = |a: &CMat, b: &CMat| -> f64 {
        a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
    };
    let gram = DMatrix::<f64>::from_fn(m, m, |i, j| inner(states[i].matrix(), states[j].matrix()));
    let target: Vec<f64> = states.iter().map(|s| inner(s.matrix(), rho.matrix())).collect();

    let mut support: Vec<usize> = (0..m).collect();
    let mut coeffs = vec![0.0; m];
    for _ in 0..=m {
        // equality-constrained least squares on the support
        let k = support.len();
        let mut kkt = DMatrix::<f64>::zeros(k + 1, k + 1);
        let mut rhs = nalgebra::DVector::<f64>::zeros(k + 1);
        for (p, &i) in support.iter().enumerate() {
            for (q, &j) in support.iter().enumerate() {
                kkt[(p, q)] = 2.0 * gram[(i, j)];
            }
            kkt[(p, p)] += 1e-12;
            kkt[(p, k)] = 1.0;
            kkt[(k, p)] = 1.0;
            rhs[p] = 2.0 * target[i];
        }
        rhs[k] = 1.0;
        let sol = match kkt.lu().solve(&rhs) {
            Some(s) => s,
            None => break,
        };
        coeffs = vec![0.0; m];
        for (p, &i) in support.iter().enumerate() {
            coeffs[i] = sol[p];
        }
        // drop the most negative coordinate, if any
        let (worst, worst_val) = support
            .iter()
            .map(|&i| (i, coeffs[i]))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if worst_val >= -1e-12 || support.len() == 1 {
            break;
        }
        support.retain(|&i| i != worst);
        let _ = worst;
    }
    let coeffs = simplex_project(&coeffs);
    let mut mix = CMat::zeros(rho.dim(), rho.dim());
    for (ci, si) in coeffs.iter().zip(states) {
        mix += si.matrix().scale(*ci);
    }
    (&mix - rho.matrix()).norm()
}

fn barycenter_param_len(set: &ConstraintSet) -> usize {
    match set {
        ConstraintSet::FiniteHull(states) => states.len(),
        ConstraintSet::Energy { hamiltonian, .. } => 2 * hamiltonian.nrows() * hamiltonian.nrows(),
    }
}

/// Barycenter candidate from the constraint chart; always feasible.
fn barycenter_from_params(set: &ConstraintSet, params: &[f64]) -> State {
    match set {
        ConstraintSet::FiniteHull(states) => {
            let max = params.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let weights: Vec<f64> = params.iter().map(|&x| (x - max).exp()).collect();
            let total: f64 = weights.iter().sum();
            let d = states[0].dim();
            let mut mix = CMat::zeros(d, d);
            for (w, s) in weights.iter().zip(states) {
                mix += s.matrix().scale(w / total);
            }
            State::trusted(mix)
        }
        ConstraintSet::Energy { hamiltonian, bound } => {
            let d = hamiltonian.nrows();
            let g = CMat::from_fn(d, d, |i, j| {
                let k = 2 * (i * d + j);
                num_complex::Complex64::new(params[k], params[k + 1])
            });
            let mut w = &g * g.adjoint();
            for i in 0..d {
                w[(i, i)] += cr(1e-12);
            }
            let rho = State::trusted(w.scale(1.0 / matrix::trace_re(&w)));
            project_into_energy_ball(&rho, hamiltonian, *bound)
        }
    }
}

/// Mix toward the ground state until the mean energy meets the bound.
fn project_into_energy_ball(rho: &State, hamiltonian: &CMat, bound: f64) -> State {
    let energy = matrix::trace_re(&(hamiltonian * rho.matrix()));
    if energy <= bound {
        return rho.clone();
    }
    let (vals, vecs) = matrix::eigh(hamiltonian);
    let ground_energy = *vals.last().unwrap();
    let ground = matrix::outer(&vecs.column(vals.len() - 1).clone_owned());
    // t rho + (1-t) ground hits the bound exactly
    let t = ((bound - ground_energy) / (energy - ground_energy)).clamp(0.0, 1.0);
    State::trusted(rho.matrix().scale(t) + ground.scale(1.0 - t))
}

/// Capacity of an operation over a constraint set, with the witness
/// ensemble, the output average of the witness and a cross-restart check of
/// the output-average uniqueness.
#[derive(Debug, Clone, Serialize)]
pub struct CapacityResult {
    pub value: f64,
    pub ensemble: Ensemble,
    /// Output average of the witness ensemble: the estimate of the optimal
    /// output state.
    pub omega: State,
    /// Largest violation, over near-optimal restarts, of the bound
    /// `||avg_out - omega||_1^2 / 2 <= value - chi(restart)`; stays at or
    /// below zero up to optimizer noise when the optimal output is unique.
    pub pinsker_slack: f64,
    pub spread: f64,
    pub restarts: usize,
    pub converged: bool,
}

pub fn chi_capacity(
    phi: &QuantumOperation,
    set: &ConstraintSet,
    members: usize,
    cfg: &OptimizerConfig,
) -> Result<CapacityResult> {
    let d = set.dim();
    if phi.dim_in() != d {
        return Err(Error::DimensionMismatch {
            expected: phi.dim_in(),
            got: d,
        });
    }
    let members = members.max(d);
    let bary_len = barycenter_param_len(set);
    let ens_len = 2 * members * d;

    let objective = |params: &[f64]| -> f64 {
        let rho_bar = barycenter_from_params(set, &params[..bary_len]);
        let out_bar = phi.apply_matrix(rho_bar.matrix());
        let s_bar = entropy_s(&TraceClassOperator::trusted(out_bar));
        let mut mean_s = 0.0;
        for (w, psi) in roof::members_full_chart(&rho_bar, members, &params[bary_len..]) {
            if w <= 1e-14 {
                continue;
            }
            let out = phi.apply_matrix(&matrix::outer(&psi.unscale(w.sqrt())));
            mean_s += w * entropy_s(&TraceClassOperator::trusted(out));
        }
        mean_s - s_bar
    };

    // deterministic warm starts: neutral barycenter with spectral ensemble,
    // plus each hull vertex
    let mut starts: Vec<Vec<f64>> = Vec::new();
    let neutral_bary = vec![0.0; bary_len];
    let mut push_start = |bary: Vec<f64>, set: &ConstraintSet| -> Result<()> {
        let rho = barycenter_from_params(set, &bary);
        let spectral = Ensemble::spectral(&rho);
        let ens = roof::params_from_ensemble_full(&rho, &spectral, members)?;
        let mut p = bary;
        p.extend(ens);
        starts.push(p);
        Ok(())
    };
    match set {
        ConstraintSet::FiniteHull(states) => {
            push_start(neutral_bary.clone(), set)?;
            for v in 0..states.len().min(8) {
                let mut logits = vec![-30.0; bary_len];
                logits[v] = 30.0;
                push_start(logits, set)?;
            }
        }
        ConstraintSet::Energy { hamiltonian, .. } => {
            // identity chart gives the maximally mixed state (then projected)
            let d = hamiltonian.nrows();
            let mut bary = vec![0.0; bary_len];
            for i in 0..d {
                bary[2 * (i * d + i)] = 1.0;
            }
            push_start(bary, set)?;
        }
    }

    let out: MultistartOutcome =
        roof::minimize_multistart(&objective, bary_len + ens_len, cfg, &starts);

    let rho_bar = barycenter_from_params(set, &out.best_point[..bary_len]);
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for (w, psi) in roof::members_full_chart(&rho_bar, members, &out.best_point[bary_len..]) {
        if w <= 1e-14 {
            continue;
        }
        weights.push(w);
        states.push(State::trusted(matrix::outer(&psi.unscale(w.sqrt()))));
    }
    let ensemble = Ensemble::new(weights, states)?;
    if !set.is_feasible(&ensemble.barycenter(), 1e-8) {
        return Err(Error::PropertyViolation {
            what: "capacity witness left the constraint set".into(),
        });
    }
    // certify through the defining relative-entropy form
    let value = holevo_chi(phi, &ensemble)?;

    let omega = output_average(phi, &ensemble)?;

    // cross-restart uniqueness check of the optimal output: every restart
    // whose chi comes within 0.25 of the best must have its output average
    // within the Pinsker radius sqrt(2 (value - chi_r)) of omega
    let mut pinsker_slack: f64 = 0.0;
    for (point, &v) in out.restart_points.iter().zip(&out.restart_values) {
        let chi_r = -v;
        if !chi_r.is_finite() || value - chi_r > 0.25 {
            continue;
        }
        let rho_r = barycenter_from_params(set, &point[..bary_len]);
        let mut avg = CMat::zeros(phi.dim_out(), phi.dim_out());
        for (w, psi) in roof::members_full_chart(&rho_r, members, &point[bary_len..]) {
            if w <= 1e-14 {
                continue;
            }
            avg += phi.apply_matrix(&matrix::outer(&psi.unscale(w.sqrt()))).scale(w);
        }
        let dist = matrix::trace_norm(&(avg - omega.matrix()));
        let deficit = (value - chi_r).max(0.0);
        pinsker_slack = pinsker_slack.max(0.5 * dist * dist - deficit);
    }

    Ok(CapacityResult {
        value,
        ensemble,
        omega,
        pinsker_slack,
        spread: out.spread,
        restarts: out.restart_values.len(),
        converged: out.converged,
    })
}

/// Output average `sum pi_i Phi(rho_i)` of an ensemble.
pub fn output_average(phi: &QuantumOperation, e: &Ensemble) -> Result<State> {
    let mut out = CMat::zeros(phi.dim_out(), phi.dim_out());
    for (w, s) in e.iter() {
        if w <= 0.0 {
            continue;
        }
        out += phi.apply_matrix(s.matrix()).scale(w);
    }
    let t = matrix::trace_re(&out);
    if (t - 1.0).abs() > 1e-8 {
        return Err(Error::InvalidEnsemble {
            reason: format!("output average has trace {t}; operation is strict"),
        });
    }
    Ok(State::trusted(out))
}

/// Capacity deficit of a feasible ensemble against an upper estimate of the
/// capacity: `c_value - chi(e)`. Half the squared trace distance from the
/// ensemble's output average to the optimal one stays below this deficit.
pub fn pinsker_certificate(
    phi: &QuantumOperation,
    set: &ConstraintSet,
    e: &Ensemble,
    c_value: f64,
) -> Result<f64> {
    if !set.is_feasible(&e.barycenter(), 1e-8) {
        return Err(Error::InfeasibleConstraint {
            reason: format!(
                "ensemble barycenter violates the constraint by {}",
                set.residual(&e.barycenter())
            ),
        });
    }
    Ok(c_value - holevo_chi(phi, e)?)
}

/// Exact energy amplification factor of a channel for positive definite
/// input Hamiltonian `h_in` and PSD output Hamiltonian `h_out`:
/// the largest eigenvalue of `H^{-1/2} Phi*(H') H^{-1/2}`, equal to the
/// supremum over states of output versus input mean energy.
pub fn amplification_factor(
    phi: &QuantumOperation,
    h_in: &CMat,
    h_out: &CMat,
) -> Result<f64> {
    if !phi.is_channel() {
        return Err(Error::InvalidArgument {
            reason: "amplification factor is defined for channels".into(),
        });
    }
    if h_in.nrows() != phi.dim_in() || h_out.nrows() != phi.dim_out() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim_in(),
            got: h_in.nrows(),
        });
    }
    for h in [h_in, h_out] {
        if matrix::hermitian_defect(h) > 1e-9 {
            return Err(Error::NotHermitian {
                defect: matrix::hermitian_defect(h),
            });
        }
    }
    let vals = matrix::eigvalsh(h_in);
    let min = vals.last().copied().unwrap_or(0.0);
    if min <= 1e-12 {
        return Err(Error::NotPositive { min_eig: min });
    }
    let h_inv_sqrt = matrix::hermitian_map(h_in, |x| x.powf(-0.5));
    let dual = phi.dual_apply(h_out);
    let m = &h_inv_sqrt * dual * &h_inv_sqrt;
    Ok(matrix::eigvalsh(&matrix::hermitize(&m))
        .first()
        .copied()
        .unwrap_or(0.0))
}

/// Verdict of the entanglement-breaking test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EbStatus {
    EntanglementBreaking,
    NotEntanglementBreaking,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct EbReport {
    pub status: EbStatus,
    /// Smallest eigenvalue of the partially transposed Choi state.
    pub min_partial_transpose_eig: f64,
    /// Whether the given Kraus representation is manifestly rank one
    /// (measure-and-prepare form).
    pub rank_one_kraus: bool,
}

/// Entanglement-breaking test: rank-one Kraus families are breaking by
/// construction; otherwise the Choi state with the maximally mixed
/// reference is tested for positivity under partial transposition, which is
/// decisive up to composite dimension six.
pub fn is_entanglement_breaking(phi: &QuantumOperation) -> Result<EbReport> {
    if !phi.is_channel() {
        return Err(Error::InvalidArgument {
            reason: "entanglement-breaking test expects a channel".into(),
        });
    }
    let rank_one = phi.kraus().iter().all(|v| {
        let sv = v.clone().singular_values();
        sv.iter().skip(1).all(|s| *s < 1e-9)
    });
    let reference = ReferenceState::maximally_mixed(phi.dim_in());
    let a = choi::choi_of(phi, &reference)?;
    let pt = matrix::partial_transpose_second(
        a.operator().matrix(),
        phi.dim_out(),
        phi.dim_in(),
    )?;
    let min_pt = matrix::eigvalsh(&pt).last().copied().unwrap_or(0.0);

    let status = if rank_one {
        EbStatus::EntanglementBreaking
    } else if min_pt < -1e-9 {
        EbStatus::NotEntanglementBreaking
    } else if phi.dim_in() * phi.dim_out() <= 6 {
        EbStatus::EntanglementBreaking
    } else {
        EbStatus::Unknown
    };
    Ok(EbReport {
        status,
        min_partial_transpose_eig: min_pt,
        rank_one_kraus: rank_one,
    })
}

/// Additivity experiment for a pair of channels at a joint input state.
#[derive(Debug, Clone, Serialize)]
pub struct AdditivityReport {
    /// chi of the tensor channel minus the sum of the marginal chis.
    pub gap: f64,
    pub chi_joint: f64,
    pub joint_spread: f64,
    /// chi of the joint channel evaluated at the product of the marginal
    /// witnesses; a certified lower bound on the joint chi.
    pub product_witness_chi: f64,
    pub chi_left: ChiResult,
    pub chi_right: ChiResult,
}

/// Gap `chi_{Phi (x) Psi}(omega) - chi_Phi(omega_A) - chi_Psi(omega_B)`.
///
/// The joint supremum is searched with the optimizer and additionally
/// evaluated at the product of the marginal witness ensembles, taking the
/// larger of the two lower bounds.
pub fn additivity_gap(
    phi: &QuantumOperation,
    psi: &QuantumOperation,
    omega: &State,
    members_joint: usize,
    cfg: &OptimizerConfig,
) -> Result<AdditivityReport> {
    let (da, db) = (phi.dim_in(), psi.dim_in());
    if omega.dim() != da * db {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            got: omega.dim(),
        });
    }
    let omega_a = crate::linops::partial_trace(omega.as_operator(), (da, db), crate::linops::Subsystem::First)?;
    let omega_b = crate::linops::partial_trace(omega.as_operator(), (da, db), crate::linops::Subsystem::Second)?;
    let omega_a = State::from_operator(omega_a)?;
    let omega_b = State::from_operator(omega_b)?;

    let chi_left = roof::chi_function(phi, &omega_a, roof::default_members(&omega_a), cfg)?;
    let chi_right = roof::chi_function(psi, &omega_b, roof::default_members(&omega_b), cfg)?;

    let joint = phi.tensor_with(psi);
    let product = chi_left
        .witness
        .trimmed(1e-9)
        .product(&chi_right.witness.trimmed(1e-9));
    let product_chi = if trace_distance(&product.barycenter(), omega)? <= 1e-8 {
        holevo_chi(&joint, &product)?
    } else {
        f64::NEG_INFINITY
    };

    let seeds: Vec<Ensemble> = if product.len() <= members_joint
        && trace_distance(&product.barycenter(), omega)? <= 1e-8
    {
        vec![product.clone()]
    } else {
        Vec::new()
    };
    let chi_joint_opt = roof::chi_function_seeded(&joint, omega, members_joint, cfg, &seeds)?;

    let chi_joint = chi_joint_opt.value.max(product_chi);
    let gap = chi_joint - chi_left.value - chi_right.value;
    Ok(AdditivityReport {
        gap,
        chi_joint,
        joint_spread: chi_joint_opt.spread,
        product_witness_chi: product_chi,
        chi_left,
        chi_right,
    })
}
