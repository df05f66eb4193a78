//! Property tests for the entropic inequalities on subnormalized operators:
//! homogeneity of the extended entropy, the splitting sandwich, subadditivity
//! with the trace correction, nonnegativity and faithfulness of the relative
//! entropy, the Pinsker bound, monotone truncated entropies and the
//! two-ensemble comparison inequality.

use chancap::linops::matrix::{self, CMat};
use chancap::linops::random;
use chancap::linops::{
    entropy_h, entropy_s, eta, h2, pinsker_gap, relative_entropy, trace_distance,
    truncated_entropy, State, Subsystem, TraceClassOperator,
};
use proptest::prelude::*;
use rand::Rng;

const SLACK: f64 = 1e-9;

fn op_from_seed(seed: u64, stream: u64, dim: usize) -> TraceClassOperator {
    let mut rng = random::rng_for(seed, stream);
    TraceClassOperator::new(random::random_trace_class(&mut rng, dim)).unwrap()
}

fn state_from_seed(seed: u64, stream: u64, dim: usize) -> State {
    let mut rng = random::rng_for(seed, stream);
    State::new(random::random_density(&mut rng, dim)).unwrap()
}

/// A <= B pair: A = B^{1/2} C B^{1/2} for a random contraction 0 <= C <= I.
fn dominated_pair(seed: u64, dim: usize) -> (TraceClassOperator, TraceClassOperator) {
    let mut rng = random::rng_for(seed, 0xd0);
    let b = random::random_trace_class(&mut rng, dim);
    let u = random::random_unitary(&mut rng, dim);
    let mut t = CMat::zeros(dim, dim);
    for i in 0..dim {
        t[(i, i)] = matrix::cr(rng.random::<f64>());
    }
    let c = &u * t * u.adjoint();
    let b_sqrt = matrix::hermitian_map(&b, f64::sqrt);
    let a = &b_sqrt * c * &b_sqrt;
    (
        TraceClassOperator::new(matrix::hermitize(&a)).unwrap(),
        TraceClassOperator::new(b).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn extended_entropy_is_homogeneous(seed in 0u64..5000, dim in 2usize..6, lam in 0.0f64..1.0) {
        let a = op_from_seed(seed, 1, dim);
        let scaled = TraceClassOperator::new(a.matrix().scale(lam)).unwrap();
        let diff = (entropy_h(&scaled) - lam * entropy_h(&a)).abs();
        prop_assert!(diff <= SLACK, "homogeneity violated by {diff}");
    }

    #[test]
    fn splitting_sandwich_holds(seed in 0u64..5000, dim in 2usize..6) {
        let (a, b) = dominated_pair(seed, dim);
        let rest = TraceClassOperator::new(b.matrix() - a.matrix()).unwrap();
        let lhs = entropy_h(&a) + entropy_h(&rest);
        let mid = entropy_h(&b);
        let width = if b.trace() > 1e-12 {
            b.trace() * h2((a.trace() / b.trace()).clamp(0.0, 1.0)).unwrap()
        } else {
            0.0
        };
        prop_assert!(lhs <= mid + SLACK, "lower sandwich violated: {lhs} > {mid}");
        prop_assert!(mid <= lhs + width + SLACK, "upper sandwich violated: {mid} > {lhs} + {width}");
    }

    #[test]
    fn subadditivity_with_trace_correction(seed in 0u64..5000, da in 2usize..4, db in 2usize..4) {
        let c = op_from_seed(seed, 2, da * db);
        let first = chancap::linops::partial_trace(&c, (da, db), Subsystem::First).unwrap();
        let second = chancap::linops::partial_trace(&c, (da, db), Subsystem::Second).unwrap();
        let lhs = entropy_s(&c);
        let rhs = entropy_s(&first) + entropy_s(&second)
            - eta(c.trace().clamp(0.0, 1.0)).unwrap();
        prop_assert!(lhs <= rhs + SLACK, "subadditivity violated: {lhs} > {rhs}");
    }

    #[test]
    fn relative_entropy_nonnegative_and_faithful(seed in 0u64..5000, dim in 2usize..6) {
        let a = state_from_seed(seed, 3, dim);
        let b = state_from_seed(seed, 4, dim);
        let h = relative_entropy(&a, &b).unwrap();
        prop_assert!(h >= -SLACK, "negative relative entropy {h}");
        // faithfulness on states: zero only at equal operators
        let self_h = relative_entropy(&a, &a).unwrap();
        prop_assert!(self_h.abs() <= 1e-8);
        if trace_distance(&a, &b).unwrap() > 1e-4 {
            prop_assert!(h > 1e-9, "zero divergence for distinct states");
        }
    }

    #[test]
    fn pinsker_bound_on_states(seed in 0u64..5000, dim in 2usize..6) {
        let rho = state_from_seed(seed, 5, dim);
        let omega = state_from_seed(seed, 6, dim);
        let gap = pinsker_gap(&rho, &omega).unwrap();
        prop_assert!(gap >= -SLACK, "Pinsker bound violated by {gap}");
    }

    #[test]
    fn truncated_entropy_monotone_to_full(seed in 0u64..5000, dim in 2usize..7) {
        let rho = state_from_seed(seed, 7, dim);
        let mut prev = 0.0;
        for n in 1..=dim {
            let v = truncated_entropy(&rho, n).unwrap();
            prop_assert!(v >= prev - SLACK, "truncated entropy dropped at order {n}");
            prev = v;
        }
        let full = truncated_entropy(&rho, dim).unwrap();
        prop_assert!((full - entropy_h(&rho)).abs() <= SLACK);
    }

    #[test]
    fn two_ensemble_comparison_inequality(seed in 0u64..5000, dim in 2usize..5, count in 2usize..5) {
        // ensembles {pi, A_i} and {pi, B_i} with A_i <= B_i
        let mut rng = random::rng_for(seed, 8);
        let mut weights: Vec<f64> = (0..count).map(|_| rng.random::<f64>() + 0.05).collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        let pairs: Vec<(TraceClassOperator, TraceClassOperator)> = (0..count)
            .map(|i| dominated_pair(seed.wrapping_mul(31).wrapping_add(i as u64), dim))
            .collect();
        let mut a_bar = CMat::zeros(dim, dim);
        let mut b_bar = CMat::zeros(dim, dim);
        for (w, (a, b)) in weights.iter().zip(&pairs) {
            a_bar += a.matrix().scale(*w);
            b_bar += b.matrix().scale(*w);
        }
        let a_bar = TraceClassOperator::new(a_bar).unwrap();
        let b_bar = TraceClassOperator::new(b_bar).unwrap();

        let mut lhs = 0.0;
        let mut rhs_sum = 0.0;
        for (w, (a, b)) in weights.iter().zip(&pairs) {
            lhs += w * relative_entropy(a, &a_bar).unwrap();
            rhs_sum += w * relative_entropy(b, &b_bar).unwrap();
        }
        if !lhs.is_finite() || !rhs_sum.is_finite() {
            return Ok(());
        }
        let tr_a = a_bar.trace().clamp(0.0, 1.0);
        let tr_b = b_bar.trace().clamp(0.0, 1.0);
        let correction = eta(tr_a).unwrap()
            + if tr_b > 1e-12 {
                tr_b * h2((tr_a / tr_b).clamp(0.0, 1.0)).unwrap()
            } else {
                0.0
            };
        prop_assert!(
            lhs <= rhs_sum + correction + SLACK,
            "ensemble comparison violated: {lhs} > {rhs_sum} + {correction}"
        );
    }

    #[test]
    fn entropy_additivity_on_tensor_products(seed in 0u64..5000, da in 2usize..4, db in 2usize..4) {
        let a = op_from_seed(seed, 9, da);
        let b = op_from_seed(seed, 10, db);
        let ab = chancap::linops::tensor(&a, &b);
        let expect = b.trace() * entropy_s(&a) + a.trace() * entropy_s(&b);
        prop_assert!((entropy_s(&ab) - expect).abs() <= 1e-8);
    }
}
