//! Named channel constructors used by the CLI and the experiment drivers.

use rand::Rng;

use super::QuantumOperation;
use crate::error::{Error, Result};
use crate::linops::matrix::{self, cr, czero, CMat};
use crate::linops::random;
use crate::linops::{State, Subsystem};

/// Identity channel on dimension `d`.
pub fn identity(d: usize) -> QuantumOperation {
    QuantumOperation::new(vec![matrix::identity(d)]).expect("identity kraus")
}

/// Zero operation (single zero Kraus operator).
pub fn zero(dim_in: usize, dim_out: usize) -> QuantumOperation {
    QuantumOperation::new(vec![CMat::zeros(dim_out, dim_in)]).expect("zero kraus")
}

/// Depolarizing channel `rho -> (1-p) rho + p Tr(rho) I/d`.
pub fn depolarizing(d: usize, p: f64) -> Result<QuantumOperation> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfDomain {
            value: p,
            domain: "[0, 1]",
        });
    }
    let mut kraus = Vec::new();
    if p < 1.0 {
        kraus.push(matrix::identity(d).scale((1.0 - p).sqrt()));
    }
    if p > 0.0 {
        let w = (p / d as f64).sqrt();
        for i in 0..d {
            for j in 0..d {
                let mut v = CMat::zeros(d, d);
                v[(i, j)] = cr(w);
                kraus.push(v);
            }
        }
    }
    QuantumOperation::new(kraus)
}

/// Fully depolarizing channel: every state goes to the maximally mixed one.
pub fn completely_depolarizing(d: usize) -> QuantumOperation {
    depolarizing(d, 1.0).expect("p = 1 in range")
}

/// Qubit amplitude damping with decay probability `gamma`.
pub fn amplitude_damping(gamma: f64) -> Result<QuantumOperation> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::OutOfDomain {
            value: gamma,
            domain: "[0, 1]",
        });
    }
    let k0 = CMat::from_row_slice(
        2,
        2,
        &[cr(1.0), czero(), czero(), cr((1.0 - gamma).sqrt())],
    );
    let k1 = CMat::from_row_slice(2, 2, &[czero(), cr(gamma.sqrt()), czero(), czero()]);
    QuantumOperation::new(vec![k0, k1])
}

/// Qubit dephasing `rho -> (1-p) rho + p Z rho Z`. At `p = 1/2` the
/// off-diagonal terms vanish completely.
pub fn dephasing(p: f64) -> Result<QuantumOperation> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfDomain {
            value: p,
            domain: "[0, 1]",
        });
    }
    let z = CMat::from_row_slice(2, 2, &[cr(1.0), czero(), czero(), cr(-1.0)]);
    QuantumOperation::new(vec![
        matrix::identity(2).scale((1.0 - p).sqrt()),
        z.scale(p.sqrt()),
    ])
}

/// Measure-and-prepare channel `rho -> sum_b Tr(M_b rho) tau_b` from POVM
/// elements `M_b` and prepared states `tau_b`. Every Kraus operator of the
/// construction is rank one.
pub fn measure_prepare(pairs: &[(CMat, State)]) -> Result<QuantumOperation> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument {
            reason: "measure-prepare needs at least one POVM/state pair".into(),
        });
    }
    let d_in = pairs[0].0.nrows();
    let d_out = pairs[0].1.dim();
    let mut kraus = Vec::new();
    for (m, tau) in pairs {
        if m.nrows() != d_in || m.ncols() != d_in {
            return Err(Error::DimensionMismatch {
                expected: d_in,
                got: m.nrows(),
            });
        }
        if tau.dim() != d_out {
            return Err(Error::DimensionMismatch {
                expected: d_out,
                got: tau.dim(),
            });
        }
        if matrix::hermitian_defect(m) > 1e-9 {
            return Err(Error::NotHermitian {
                defect: matrix::hermitian_defect(m),
            });
        }
        let (mv, mu) = matrix::eigh(m);
        if mv.last().copied().unwrap_or(0.0) < -1e-9 {
            return Err(Error::NotPositive {
                min_eig: mv.last().copied().unwrap(),
            });
        }
        let (tv, tu) = matrix::eigh(tau.matrix());
        for (a, &ma) in mv.iter().enumerate() {
            if ma <= 1e-12 {
                continue;
            }
            for (b, &tb) in tv.iter().enumerate() {
                if tb <= 1e-12 {
                    continue;
                }
                // sqrt(ma tb) |y_b><x_a|
                let x = mu.column(a);
                let y = tu.column(b);
                let w = (ma * tb).sqrt();
                let v = CMat::from_fn(d_out, d_in, |r, c| y[r] * x[c].conj() * cr(w));
                kraus.push(v);
            }
        }
    }
    QuantumOperation::new(kraus)
}

/// Random channel: Ginibre Kraus stack normalized so that `sum V*V = I`.
pub fn random_channel(
    rng: &mut impl Rng,
    dim_in: usize,
    dim_out: usize,
    kraus_count: usize,
) -> QuantumOperation {
    let g: Vec<CMat> = (0..kraus_count.max(1))
        .map(|_| random::ginibre(rng, dim_out, dim_in))
        .collect();
    let mut s = CMat::zeros(dim_in, dim_in);
    for gk in &g {
        s += gk.adjoint() * gk;
    }
    let s_inv_sqrt = matrix::hermitian_map(&s, |x| {
        if x > 1e-14 {
            x.powf(-0.5)
        } else {
            0.0
        }
    });
    let kraus: Vec<CMat> = g.iter().map(|gk| gk * &s_inv_sqrt).collect();
    QuantumOperation::new(kraus).expect("normalized kraus stack")
}

/// Random strict operation: a random channel contracted by a random positive
/// contraction `T <= I`, so `sum V*V = T`.
pub fn random_operation(
    rng: &mut impl Rng,
    dim_in: usize,
    dim_out: usize,
    kraus_count: usize,
) -> QuantumOperation {
    let channel = random_channel(rng, dim_in, dim_out, kraus_count);
    let u = random::random_unitary(rng, dim_in);
    let mut t = CMat::zeros(dim_in, dim_in);
    for i in 0..dim_in {
        t[(i, i)] = cr(rng.random::<f64>().clamp(0.05, 1.0));
    }
    let contraction = &u * t * u.adjoint();
    let half = matrix::hermitian_map(&contraction, f64::sqrt);
    let kraus: Vec<CMat> = channel.kraus().iter().map(|v| v * &half).collect();
    QuantumOperation::new(kraus).expect("contracted kraus stack")
}

/// Partial trace channel on a bipartite system with factor dimensions
/// `(d_first, d_second)`, keeping the named factor.
pub fn partial_trace_channel(
    d_first: usize,
    d_second: usize,
    keep: Subsystem,
) -> QuantumOperation {
    let kraus: Vec<CMat> = match keep {
        Subsystem::First => (0..d_second)
            .map(|k| {
                CMat::from_fn(d_first, d_first * d_second, |r, c| {
                    if c == r * d_second + k {
                        cr(1.0)
                    } else {
                        czero()
                    }
                })
            })
            .collect(),
        Subsystem::Second => (0..d_first)
            .map(|k| {
                CMat::from_fn(d_second, d_first * d_second, |r, c| {
                    if c == k * d_second + r {
                        cr(1.0)
                    } else {
                        czero()
                    }
                })
            })
            .collect(),
    };
    QuantumOperation::new(kraus).expect("partial trace kraus")
}

/// Completion of the projective truncation to a channel:
/// `rho -> P rho P + Tr((I-P) rho) tau` with `P` the projector on the first
/// `n` basis vectors and `tau` defaulting to the maximally mixed state on
/// the retained support.
pub fn truncation_channel(d: usize, n: usize, tau: Option<State>) -> Result<QuantumOperation> {
    if n == 0 || n > d {
        return Err(Error::InvalidArgument {
            reason: format!("truncation rank {n} outside 1..={d}"),
        });
    }
    let p = matrix::basis_projector(d, n);
    let tau = tau.unwrap_or_else(|| {
        State::trusted(p.scale(1.0 / n as f64))
    });
    if tau.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: tau.dim(),
        });
    }
    let mut kraus = vec![p];
    if n < d {
        let (tv, tu) = matrix::eigh(tau.matrix());
        for (m, &t) in tv.iter().enumerate() {
            if t <= 1e-12 {
                continue;
            }
            for i in n..d {
                // sqrt(t_m) |y_m><i|
                let y = tu.column(m);
                let v = CMat::from_fn(d, d, |r, c| {
                    if c == i {
                        y[r] * cr(t.sqrt())
                    } else {
                        czero()
                    }
                });
                kraus.push(v);
            }
        }
    }
    QuantumOperation::new(kraus)
}

/// Random measure-and-prepare channel: projective measurement in a random
/// basis followed by preparation of random pure states.
pub fn random_measure_prepare(rng: &mut impl Rng, d: usize) -> QuantumOperation {
    let u = random::random_unitary(rng, d);
    let pairs: Vec<(CMat, State)> = (0..d)
        .map(|i| {
            let col = u.column(i).clone_owned();
            let povm = matrix::outer(&col);
            let prep = State::trusted(random::random_pure_density(rng, d));
            (povm, prep)
        })
        .collect();
    measure_prepare(&pairs).expect("projective measure-prepare")
}

/// Pauli Z matrix (used by a couple of tests and the CLI factories).
pub fn pauli_z() -> CMat {
    CMat::from_row_slice(2, 2, &[cr(1.0), czero(), czero(), cr(-1.0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::OperationKind;
    use crate::linops::TraceClassOperator;
    use approx::assert_abs_diff_eq;

    #[test]
    fn named_factories_are_channels() {
        let mut rng = random::rng_for(21, 0);
        assert!(identity(3).is_channel());
        assert!(depolarizing(2, 0.3).unwrap().is_channel());
        assert!(amplitude_damping(0.4).unwrap().is_channel());
        assert!(dephasing(0.5).unwrap().is_channel());
        assert!(random_channel(&mut rng, 3, 2, 4).is_channel());
        assert!(random_measure_prepare(&mut rng, 2).is_channel());
        assert!(partial_trace_channel(2, 3, Subsystem::First).is_channel());
        assert!(truncation_channel(4, 2, None).unwrap().is_channel());
        assert_eq!(zero(2, 2).kind(), OperationKind::StrictOperation);
        assert_eq!(
            random_operation(&mut rng, 2, 2, 3).kind(),
            OperationKind::StrictOperation
        );
    }

    #[test]
    fn measure_prepare_action_matches_definition() {
        let mut rng = random::rng_for(22, 0);
        let phi = random_measure_prepare(&mut rng, 2);
        let rho = TraceClassOperator::new(random::random_density(&mut rng, 2)).unwrap();
        let out = phi.apply(&rho).unwrap();
        assert_abs_diff_eq!(out.trace(), 1.0, epsilon = 1e-10);
        // rank-one Kraus family by construction
        for v in phi.kraus() {
            let sv = v.clone().singular_values();
            assert!(sv.iter().skip(1).all(|s| *s < 1e-10));
        }
    }

    #[test]
    fn partial_trace_channel_agrees_with_partial_trace() {
        let mut rng = random::rng_for(23, 0);
        let omega = TraceClassOperator::new(random::random_density(&mut rng, 6)).unwrap();
        let theta = partial_trace_channel(2, 3, Subsystem::First);
        let via_channel = theta.apply(&omega).unwrap();
        let direct = crate::linops::partial_trace(&omega, (2, 3), Subsystem::First).unwrap();
        assert!((via_channel.matrix() - direct.matrix())
            .iter()
            .all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn truncation_channel_completes_the_projection() {
        let mut rng = random::rng_for(24, 0);
        let pi = truncation_channel(3, 2, None).unwrap();
        let rho = TraceClassOperator::new(random::random_density(&mut rng, 3)).unwrap();
        let out = pi.apply(&rho).unwrap();
        assert_abs_diff_eq!(out.trace(), 1.0, epsilon = 1e-10);
        let p = matrix::basis_projector(3, 2);
        let lost = 1.0 - matrix::trace_re(&(&p * rho.matrix()));
        let expect = &p * rho.matrix() * &p + p.scale(lost / 2.0);
        assert!((out.matrix() - expect).iter().all(|z| z.norm() < 1e-10));
    }
}
