//! Convex-roof functionals over pure-state decompositions.
//!
//! Every mixed state `rho` of rank `r` has its `N`-member pure decompositions
//! parameterized by `N x r` matrices with orthonormal columns: the member
//! vectors are `psi_j = sum_i conj(U_ji) sqrt(l_i) |e_i>` over the spectral
//! data of `rho`. Roofs (infima of `sum pi_i f(rho_i)` with the barycenter
//! pinned at `rho`) and the Holevo quantity (a supremum of the same shape)
//! are computed by seeded multi-start simplex descent over that chart; the
//! spread across restarts is reported as the error bar and the spectral
//! decomposition always serves as the first starting point.

pub mod optimizer;

use serde::{Deserialize, Serialize};

use crate::channels::QuantumOperation;
use crate::error::{Error, Result};
use crate::linops::io::OperatorJson;
use crate::linops::matrix::{self, cr, CMat, CVec, EIG_CUTOFF};
use crate::linops::{
    entropy_s, relative_entropy, trace_distance, truncated_entropy, State, TraceClassOperator,
};
pub use optimizer::{minimize_multistart, MultistartOutcome, OptimizerConfig};

/// Finite weighted collection of states with a common dimension.
#[derive(Debug, Clone)]
pub struct Ensemble {
    weights: Vec<f64>,
    states: Vec<State>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, states: Vec<State>) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::InvalidEnsemble {
                reason: "weights and states must be nonempty and match".into(),
            });
        }
        if weights.iter().any(|w| *w < -1e-12) {
            return Err(Error::InvalidEnsemble {
                reason: "negative weight".into(),
            });
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidEnsemble {
                reason: format!("weights sum to {total}, expected 1"),
            });
        }
        let dim = states[0].dim();
        if states.iter().any(|s| s.dim() != dim) {
            return Err(Error::InvalidEnsemble {
                reason: "states of mixed dimensions".into(),
            });
        }
        Ok(Self { weights, states })
    }

    pub fn single(state: State) -> Self {
        Self {
            weights: vec![1.0],
            states: vec![state],
        }
    }

    /// Spectral decomposition of a state as an ensemble of eigenvectors.
    pub fn spectral(rho: &State) -> Self {
        let (vals, vecs) = matrix::eigh(rho.matrix());
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for (i, &v) in vals.iter().enumerate() {
            if v <= EIG_CUTOFF {
                continue;
            }
            weights.push(v);
            states.push(State::trusted(matrix::outer(&vecs.column(i).clone_owned())));
        }
        // eigenvalue clipping can leave a deficit well below 1e-10
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        Self { weights, states }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &State)> {
        self.weights.iter().copied().zip(self.states.iter())
    }

    /// All members pure within tolerance.
    pub fn is_pure(&self) -> bool {
        self.states.iter().all(|s| s.is_pure())
    }

    /// Barycenter `sum pi_i rho_i`.
    pub fn barycenter(&self) -> State {
        let d = self.dim();
        let mut m = CMat::zeros(d, d);
        for (w, s) in self.iter() {
            m += s.matrix().scale(w);
        }
        State::trusted(m)
    }

    /// Members with weight above `cut`, reweighted to sum to one.
    pub fn trimmed(&self, cut: f64) -> Ensemble {
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for (w, s) in self.iter() {
            if w > cut {
                weights.push(w);
                states.push(s.clone());
            }
        }
        if weights.is_empty() {
            return self.clone();
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        Ensemble { weights, states }
    }

    /// Product ensemble on the tensor product space.
    pub fn product(&self, other: &Ensemble) -> Ensemble {
        let mut weights = Vec::new();
        let mut states = Vec::new();
        for (wa, sa) in self.iter() {
            for (wb, sb) in other.iter() {
                weights.push(wa * wb);
                states.push(State::trusted(matrix::kron(sa.matrix(), sb.matrix())));
            }
        }
        Ensemble { weights, states }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnsembleJson {
    pub weights: Vec<f64>,
    pub states: Vec<OperatorJson>,
}

impl Serialize for Ensemble {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        EnsembleJson {
            weights: self.weights.clone(),
            states: self
                .states
                .iter()
                .map(|s| OperatorJson::from_matrix(s.matrix()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Ensemble {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = EnsembleJson::deserialize(deserializer)?;
        let states = j
            .states
            .iter()
            .map(|o| o.to_matrix().and_then(State::new))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ensemble::new(j.weights, states).map_err(serde::de::Error::custom)
    }
}

/// Barycenter of an ensemble (free-function form).
pub fn barycenter(e: &Ensemble) -> State {
    e.barycenter()
}

/// Holevo quantity `sum pi_i H(Phi(rho_i) || Phi(rho_bar))`.
///
/// When the output entropy of the barycenter is finite (always, here) the
/// value is cross-checked against `S(Phi(rho_bar)) - sum pi_i S(Phi(rho_i))`
/// within 1e-8; disagreement reports an internal consistency failure.
pub fn holevo_chi(phi: &QuantumOperation, e: &Ensemble) -> Result<f64> {
    if e.dim() != phi.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim_in(),
            got: e.dim(),
        });
    }
    let out_bar = phi.apply(e.barycenter().as_operator())?;
    let mut direct = 0.0;
    let mut mean_s = 0.0;
    for (w, s) in e.iter() {
        if w <= 0.0 {
            continue;
        }
        let out = phi.apply(s.as_operator())?;
        direct += w * relative_entropy(&out, &out_bar)?;
        mean_s += w * entropy_s(&out);
    }
    let identity = entropy_s(&out_bar) - mean_s;
    if direct.is_finite() && (direct - identity).abs() > 1e-8 {
        return Err(Error::PropertyViolation {
            what: format!(
                "Holevo quantity routes disagree: integral {direct}, entropy difference {identity}"
            ),
        });
    }
    Ok(direct)
}

/// Spectral data of the support of a state: eigenvalues above the cutoff
/// (optionally zero-padded to full dimension) and the matching eigenvectors.
struct SupportChart {
    lambdas: Vec<f64>,
    vectors: CMat,
}

impl SupportChart {
    fn of(rho: &State, pad_to_full: bool) -> Self {
        let (vals, vecs) = matrix::eigh(rho.matrix());
        let d = rho.dim();
        let rank = vals.iter().filter(|v| **v > EIG_CUTOFF).count().max(1);
        let cols = if pad_to_full { d } else { rank };
        let mut lambdas = vec![0.0; cols];
        let mut vectors = CMat::zeros(d, cols);
        for i in 0..cols {
            lambdas[i] = vals[i].max(0.0);
            vectors.set_column(i, &vecs.column(i));
        }
        Self { lambdas, vectors }
    }

    fn rank(&self) -> usize {
        self.lambdas.len()
    }

    /// Member vectors and weights for an orthonormal-column `U`.
    fn members(&self, u: &CMat) -> Vec<(f64, CVec)> {
        let d = self.vectors.nrows();
        let r = self.rank();
        let n = u.nrows();
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut psi = CVec::zeros(d);
            for i in 0..r {
                let a = u[(j, i)].conj() * cr(self.lambdas[i].sqrt());
                for row in 0..d {
                    psi[row] += a * self.vectors[(row, i)];
                }
            }
            let w = psi.norm_squared();
            out.push((w, psi));
        }
        out
    }
}

fn params_to_u(params: &[f64], members: usize, rank: usize) -> CMat {
    let g = CMat::from_fn(members, rank, |j, i| {
        let k = 2 * (j * rank + i);
        num_complex::Complex64::new(params[k], params[k + 1])
    });
    matrix::orthonormalize_columns(&g)
}

fn u_to_params(u: &CMat) -> Vec<f64> {
    let (members, rank) = (u.nrows(), u.ncols());
    let mut params = vec![0.0; 2 * members * rank];
    for j in 0..members {
        for i in 0..rank {
            let k = 2 * (j * rank + i);
            params[k] = u[(j, i)].re;
            params[k + 1] = u[(j, i)].im;
        }
    }
    params
}

/// Default decomposition size: rank squared (sufficient for roof optima in
/// finite dimension).
pub fn default_members(rho: &State) -> usize {
    let r = rho
        .eigenvalues()
        .iter()
        .filter(|v| **v > EIG_CUTOFF)
        .count()
        .max(1);
    r * r
}

/// Pure decomposition of `rho` with `members` members from a real parameter
/// vector of length `2 * members * rank(rho)`; surjective onto all
/// decompositions of that size. Zero-weight members are dropped.
pub fn ensemble_from_params(rho: &State, members: usize, params: &[f64]) -> Result<Ensemble> {
    let chart = SupportChart::of(rho, false);
    let r = chart.rank();
    if members < r {
        return Err(Error::InvalidEnsemble {
            reason: format!("{members} members cannot decompose a rank-{r} state"),
        });
    }
    if params.len() != 2 * members * r {
        return Err(Error::InvalidArgument {
            reason: format!(
                "expected {} parameters for {members} members and rank {r}, got {}",
                2 * members * r,
                params.len()
            ),
        });
    }
    let u = params_to_u(params, members, r);
    let mut weights = Vec::new();
    let mut states = Vec::new();
    for (w, psi) in chart.members(&u) {
        if w <= 1e-14 {
            continue;
        }
        weights.push(w);
        states.push(State::trusted(matrix::outer(&psi.unscale(w.sqrt()))));
    }
    Ensemble::new(weights, states)
}

/// Inverse of the parameterization for a pure ensemble with barycenter
/// `rho`, zero-padded to `members` rows. Used to warm-start optimizations
/// from known-good decompositions.
pub fn params_from_ensemble(rho: &State, e: &Ensemble, members: usize) -> Result<Vec<f64>> {
    if e.len() > members {
        return Err(Error::InvalidEnsemble {
            reason: format!("ensemble has {} members, chart only fits {members}", e.len()),
        });
    }
    if trace_distance(&e.barycenter(), rho)? > 1e-8 {
        return Err(Error::InvalidEnsemble {
            reason: "ensemble barycenter differs from the target state".into(),
        });
    }
    let chart = SupportChart::of(rho, false);
    let r = chart.rank();
    let mut u = CMat::zeros(members, r);
    for (j, (w, s)) in e.iter().enumerate() {
        let (vals, vecs) = matrix::eigh(s.matrix());
        if vals[0] < 1.0 - 1e-9 {
            return Err(Error::InvalidEnsemble {
                reason: "warm-start ensembles must consist of pure states".into(),
            });
        }
        let psi = vecs.column(0).scale(w.sqrt());
        for i in 0..r {
            if chart.lambdas[i] <= EIG_CUTOFF {
                continue;
            }
            // U_ji = conj(<v_i|psi~_j>) / sqrt(l_i)
            let mut overlap = matrix::czero();
            for row in 0..rho.dim() {
                overlap += chart.vectors[(row, i)].conj() * psi[row];
            }
            u[(j, i)] = overlap.conj() / cr(chart.lambdas[i].sqrt());
        }
    }
    Ok(u_to_params(&u))
}

/// Member weights and vectors from the full-dimension chart (rank padded to
/// the space dimension), for callers whose target state varies during the
/// optimization and must keep a fixed parameter count.
pub(crate) fn members_full_chart(
    rho: &State,
    members: usize,
    params: &[f64],
) -> Vec<(f64, CVec)> {
    let chart = SupportChart::of(rho, true);
    let u = params_to_u(params, members, chart.rank());
    chart.members(&u)
}

/// Inverse chart in the full-dimension convention; zero-eigenvalue columns
/// are left for the orthonormalization to complete.
pub(crate) fn params_from_ensemble_full(
    rho: &State,
    e: &Ensemble,
    members: usize,
) -> Result<Vec<f64>> {
    if e.len() > members {
        return Err(Error::InvalidEnsemble {
            reason: format!("ensemble has {} members, chart only fits {members}", e.len()),
        });
    }
    let chart = SupportChart::of(rho, true);
    let r = chart.rank();
    let mut u = CMat::zeros(members, r);
    for (j, (w, s)) in e.iter().enumerate() {
        let (vals, vecs) = matrix::eigh(s.matrix());
        if vals[0] < 1.0 - 1e-9 {
            return Err(Error::InvalidEnsemble {
                reason: "warm-start ensembles must consist of pure states".into(),
            });
        }
        let psi = vecs.column(0).scale(w.sqrt());
        for i in 0..r {
            if chart.lambdas[i] <= EIG_CUTOFF {
                continue;
            }
            let mut overlap = matrix::czero();
            for row in 0..rho.dim() {
                overlap += chart.vectors[(row, i)].conj() * psi[row];
            }
            u[(j, i)] = overlap.conj() / cr(chart.lambdas[i].sqrt());
        }
    }
    Ok(u_to_params(&u))
}

/// Outcome of a roof (or roof-shaped supremum) optimization.
#[derive(Debug, Clone, Serialize)]
pub struct RoofResult {
    pub value: f64,
    pub ensemble: Ensemble,
    pub restarts: usize,
    pub converged: bool,
    /// max - min of the restart values; the honest accuracy estimate.
    pub spread: f64,
}

fn optimize_mixture<F>(
    f: &F,
    rho: &State,
    members: usize,
    cfg: &OptimizerConfig,
    seeds: &[Ensemble],
    maximize: bool,
) -> Result<RoofResult>
where
    F: Fn(&State) -> f64 + Sync,
{
    let chart = SupportChart::of(rho, false);
    let r = chart.rank();
    if members < r {
        return Err(Error::InvalidEnsemble {
            reason: format!("{members} members cannot decompose a rank-{r} state"),
        });
    }
    let sign = if maximize { -1.0 } else { 1.0 };
    let objective = move |params: &[f64]| -> f64 {
        let u = params_to_u(params, members, r);
        let mut total = 0.0;
        for (w, psi) in chart.members(&u) {
            if w <= 1e-14 {
                continue;
            }
            let s = State::trusted(matrix::outer(&psi.unscale(w.sqrt())));
            let v = f(&s);
            if v.is_infinite() {
                return f64::INFINITY * sign;
            }
            total += w * v;
        }
        sign * total
    };

    // spectral decomposition first, then caller-provided warm starts
    let mut starts = Vec::with_capacity(1 + seeds.len());
    starts.push(params_from_ensemble(rho, &Ensemble::spectral(rho), members)?);
    for seed in seeds {
        starts.push(params_from_ensemble(rho, seed, members)?);
    }

    let out = minimize_multistart(&objective, 2 * members * r, cfg, &starts);
    let ensemble = ensemble_from_params(rho, members, &out.best_point)?;
    let value = sign * out.best_value;
    let witness_gap = trace_distance(&ensemble.barycenter(), rho)?;
    if witness_gap > 1e-8 {
        return Err(Error::PropertyViolation {
            what: format!("witness barycenter drifted by {witness_gap}"),
        });
    }
    Ok(RoofResult {
        value,
        ensemble,
        restarts: out.restart_values.len(),
        converged: out.converged,
        spread: out.spread,
    })
}

/// Convex roof of an arbitrary functional at `rho`: the infimum of
/// `sum pi_i f(rho_i)` over pure decompositions with `members` members.
pub fn convex_roof<F>(
    f: F,
    rho: &State,
    members: usize,
    cfg: &OptimizerConfig,
) -> Result<RoofResult>
where
    F: Fn(&State) -> f64 + Sync,
{
    optimize_mixture(&f, rho, members, cfg, &[], false)
}

/// [`convex_roof`] with extra warm-start decompositions.
pub fn convex_roof_seeded<F>(
    f: F,
    rho: &State,
    members: usize,
    cfg: &OptimizerConfig,
    seeds: &[Ensemble],
) -> Result<RoofResult>
where
    F: Fn(&State) -> f64 + Sync,
{
    optimize_mixture(&f, rho, members, cfg, seeds, false)
}

/// Roofs of the output entropies of an operation, in both the plain (`S`)
/// and the extended (`H`) form, with their defining inequality checked:
/// `co H <= co S <= co H + eta(Tr Phi(rho))` up to restart spread.
#[derive(Debug, Clone, Serialize)]
pub struct OutputEntropyRoofs {
    pub h_roof: RoofResult,
    pub s_roof: RoofResult,
    /// eta of the output trace, the exact width of the sandwich.
    pub eta_output_trace: f64,
}

pub fn co_output_entropy(
    phi: &QuantumOperation,
    rho: &State,
    members: usize,
    cfg: &OptimizerConfig,
) -> Result<OutputEntropyRoofs> {
    if rho.dim() != phi.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim_in(),
            got: rho.dim(),
        });
    }
    let s_roof = optimize_mixture(
        &|s: &State| entropy_s(&phi.apply(s.as_operator()).expect("dims checked")),
        rho,
        members,
        cfg,
        &[],
        false,
    )?;
    let h_roof = optimize_mixture(
        &|s: &State| crate::linops::entropy_h(&phi.apply(s.as_operator()).expect("dims checked")),
        rho,
        members,
        cfg,
        &[s_roof.ensemble.clone()],
        false,
    )?;
    let out_trace = phi.apply(rho.as_operator())?.trace().clamp(0.0, 1.0);
    let eta_output_trace = crate::linops::eta(out_trace)?;
    let slack = h_roof.spread + s_roof.spread + 1e-9;
    if h_roof.value > s_roof.value + slack
        || s_roof.value > h_roof.value + eta_output_trace + slack
    {
        return Err(Error::PropertyViolation {
            what: format!(
                "output entropy roofs escape the sandwich: co H = {}, co S = {}, eta = {}",
                h_roof.value, s_roof.value, eta_output_trace
            ),
        });
    }
    Ok(OutputEntropyRoofs {
        h_roof,
        s_roof,
        eta_output_trace,
    })
}

/// Holevo quantity of an operation at a state, by two routes.
#[derive(Debug, Clone, Serialize)]
pub struct ChiResult {
    /// Reported value: output entropy minus the entropy roof.
    pub value: f64,
    /// Ensemble achieving the reported value.
    pub witness: Ensemble,
    /// Value of the direct supremum of the relative-entropy average.
    pub direct_value: f64,
    /// |direct - identity| diagnostic.
    pub consistency_gap: f64,
    /// Combined restart spread of the two optimizations.
    pub spread: f64,
    pub restarts: usize,
    pub converged: bool,
}

pub fn chi_function(
    phi: &QuantumOperation,
    rho: &State,
    members: usize,
    cfg: &OptimizerConfig,
) -> Result<ChiResult> {
    chi_function_seeded(phi, rho, members, cfg, &[])
}

/// [`chi_function`] with extra warm-start decompositions (used by the
/// additivity experiments to hand product decompositions to the joint
/// channel).
pub fn chi_function_seeded(
    phi: &QuantumOperation,
    rho: &State,
    members: usize,
    cfg: &OptimizerConfig,
    seeds: &[Ensemble],
) -> Result<ChiResult> {
    if rho.dim() != phi.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim_in(),
            got: rho.dim(),
        });
    }
    let s_rho = entropy_s(&phi.apply(rho.as_operator())?);
    let s_roof = optimize_mixture(
        &|s: &State| entropy_s(&phi.apply(s.as_operator()).expect("dims checked")),
        rho,
        members,
        cfg,
        seeds,
        false,
    )?;
    let identity_value = (s_rho - s_roof.value).max(0.0);

    // direct supremum of the averaged relative entropy, same chart
    let out_bar = phi.apply(rho.as_operator())?;
    let mut direct_seeds: Vec<Ensemble> = Vec::with_capacity(seeds.len() + 1);
    direct_seeds.push(s_roof.ensemble.clone());
    direct_seeds.extend(seeds.iter().cloned());
    let direct = optimize_mixture(
        &|s: &State| {
            let out = phi.apply(s.as_operator()).expect("dims checked");
            relative_entropy(&out, &out_bar).expect("dims checked")
        },
        rho,
        members,
        cfg,
        &direct_seeds,
        true,
    )?;

    Ok(ChiResult {
        value: identity_value,
        witness: s_roof.ensemble.clone(),
        direct_value: direct.value,
        consistency_gap: (direct.value - identity_value).abs(),
        spread: s_roof.spread.max(direct.spread),
        restarts: s_roof.restarts + direct.restarts,
        converged: s_roof.converged && direct.converged,
    })
}

/// Roof of the truncated output entropy of order `n`.
pub fn truncated_roof(
    phi: &QuantumOperation,
    rho: &State,
    n: usize,
    members: usize,
    cfg: &OptimizerConfig,
) -> Result<RoofResult> {
    if n < 1 {
        return Err(Error::InvalidArgument {
            reason: "truncation order must be at least 1".into(),
        });
    }
    if rho.dim() != phi.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim_in(),
            got: rho.dim(),
        });
    }
    optimize_mixture(
        &|s: &State| {
            let out = phi.apply(s.as_operator()).expect("dims checked");
            truncated_entropy(&out, n).expect("order checked")
        },
        rho,
        members,
        cfg,
        &[],
        false,
    )
}

/// Entanglement of formation: the roof of the reduced-state entropy of a
/// bipartite state, i.e. the output-entropy roof of the partial-trace
/// channel onto the first factor.
pub fn entanglement_of_formation(
    omega: &State,
    dims: (usize, usize),
    members: usize,
    cfg: &OptimizerConfig,
) -> Result<RoofResult> {
    if omega.dim() != dims.0 * dims.1 {
        return Err(Error::DimensionMismatch {
            expected: dims.0 * dims.1,
            got: omega.dim(),
        });
    }
    optimize_mixture(
        &|s: &State| {
            let red = matrix::partial_trace(s.matrix(), dims.0, dims.1, true)
                .expect("dims checked");
            entropy_s(&TraceClassOperator::trusted(red))
        },
        omega,
        members,
        cfg,
        &[],
        false,
    )
}

/// Closed-form two-qubit entanglement of formation through the concurrence,
/// in nats. Serves as the independent oracle for the roof optimizer.
pub fn wootters_eof(omega: &State) -> Result<f64> {
    if omega.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: omega.dim(),
        });
    }
    let rho = omega.matrix();
    // (Y (x) Y) conj(rho) (Y (x) Y)
    let y = CMat::from_row_slice(
        2,
        2,
        &[
            matrix::czero(),
            num_complex::Complex64::new(0.0, -1.0),
            num_complex::Complex64::new(0.0, 1.0),
            matrix::czero(),
        ],
    );
    let yy = matrix::kron(&y, &y);
    let conj = rho.map(|z| z.conj());
    let tilde = &yy * conj * &yy;
    let sqrt_rho = matrix::hermitian_map(rho, f64::sqrt);
    let m = &sqrt_rho * tilde * &sqrt_rho;
    let mut mu: Vec<f64> = matrix::eigvalsh(&matrix::hermitize(&m))
        .into_iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    mu.sort_by(|a, b| b.total_cmp(a));
    let c = (mu[0] - mu[1] - mu[2] - mu[3]).max(0.0);
    let x = 0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt());
    crate::linops::h2(x)
}
