//! Capacity-level properties: monotonicity under constraint growth and under
//! energy-bound growth, the monotone-composition echo of lower
//! semicontinuity along completed truncations, and the uniqueness of the
//! optimal output average through the Pinsker bound.

use chancap::capacity::{
    additivity_gap, chi_capacity, energy_ball, output_average, pinsker_certificate,
    ConstraintSet,
};
use chancap::channels::factory;
use chancap::linops::matrix::{self, cr};
use chancap::linops::random;
use chancap::linops::{trace_distance, State};
use chancap::roof::{ensemble_from_params, OptimizerConfig};
use rand::Rng;

fn cfg(seed: u64) -> OptimizerConfig {
    OptimizerConfig {
        restarts: 10,
        max_iters: 4_000,
        tol: 1e-8,
        seed,
    }
}

fn diag_hamiltonian(levels: &[f64]) -> matrix::CMat {
    matrix::CMat::from_fn(levels.len(), levels.len(), |i, j| {
        if i == j {
            cr(levels[i])
        } else {
            matrix::czero()
        }
    })
}

#[test]
fn capacity_monotone_under_hull_growth() {
    let mut rng = random::rng_for(81, 0);
    let phi = factory::random_channel(&mut rng, 2, 2, 2);
    let a = State::new(random::random_density(&mut rng, 2)).unwrap();
    let b = State::basis(2, 0);
    let c = State::basis(2, 1);

    let small = ConstraintSet::finite_hull(vec![a.clone()]).unwrap();
    let large = ConstraintSet::finite_hull(vec![a, b, c]).unwrap();
    let cap_small = chi_capacity(&phi, &small, 4, &cfg(1)).unwrap();
    let cap_large = chi_capacity(&phi, &large, 4, &cfg(1)).unwrap();
    assert!(
        cap_small.value <= cap_large.value + cap_large.spread + 1e-6,
        "capacity dropped under hull growth: {} > {}",
        cap_small.value,
        cap_large.value
    );
}

#[test]
fn capacity_monotone_in_energy_bound() {
    let mut rng = random::rng_for(82, 0);
    let phi = factory::random_channel(&mut rng, 3, 3, 2);
    let h = diag_hamiltonian(&[0.0, 1.0, 2.0]);
    let mut prev = -1.0;
    let mut prev_spread = 0.0;
    for bound in [0.0, 0.4, 0.8, 1.4, 2.0] {
        let set = energy_ball(h.clone(), bound, 3).unwrap();
        let cap = chi_capacity(&phi, &set, 4, &cfg(2)).unwrap();
        assert!(
            cap.value >= prev - prev_spread - cap.spread - 1e-4,
            "capacity dropped when the energy bound grew to {bound}: {} < {}",
            cap.value,
            prev
        );
        prev = cap.value;
        prev_spread = cap.spread;
    }
}

#[test]
fn ground_face_capacity_is_chi_on_the_face() {
    // at the minimal bound, the feasible set degenerates to the bottom level
    let phi = factory::identity(2);
    let h = diag_hamiltonian(&[0.0, 1.0]);
    let set = energy_ball(h, 0.0, 2).unwrap();
    let cap = chi_capacity(&phi, &set, 4, &cfg(3)).unwrap();
    assert!(cap.value.abs() <= 1e-6, "ground-face capacity {}", cap.value);
    assert!(
        trace_distance(&cap.ensemble.barycenter(), &State::basis(2, 0)).unwrap() <= 1e-6
    );
}

#[test]
fn completed_truncations_stay_below_and_reach_the_capacity() {
    // Pi_n o Phi for channel completions Pi_n of growing projective
    // truncations: capacities stay below the untruncated one and match it at
    // full rank
    let mut rng = random::rng_for(83, 0);
    let d = 3;
    let phi = factory::random_channel(&mut rng, d, d, 2);
    let set = energy_ball(matrix::identity(d), 2.0, d).unwrap();
    let full = chi_capacity(&phi, &set, d, &cfg(4)).unwrap();
    let mut last = f64::NEG_INFINITY;
    for n in 1..=d {
        let pi_n = factory::truncation_channel(d, n, None).unwrap();
        let composed = pi_n.compose(&phi).unwrap();
        let cap = chi_capacity(&composed, &set, d, &cfg(4)).unwrap();
        assert!(
            cap.value <= full.value + full.spread + cap.spread + 2e-3,
            "monotone composition exceeded the original capacity at rank {n}"
        );
        last = cap.value;
    }
    assert!(
        (last - full.value).abs() <= full.spread + 2e-3,
        "terminal capacity {} differs from {}",
        last,
        full.value
    );
}

#[test]
fn near_optimal_ensembles_share_their_output_average() {
    // two independently found near-optimal ensembles must map to nearby
    // output averages (the optimal output is unique)
    let mut rng = random::rng_for(84, 0);
    let phi = factory::random_channel(&mut rng, 2, 2, 3);
    let set = energy_ball(matrix::identity(2), 2.0, 2).unwrap();
    let cap_a = chi_capacity(&phi, &set, 4, &cfg(5)).unwrap();
    let cap_b = chi_capacity(&phi, &set, 4, &cfg(1234)).unwrap();

    let delta_a = pinsker_certificate(&phi, &set, &cap_a.ensemble, cap_a.value.max(cap_b.value))
        .unwrap()
        .max(0.0);
    let delta_b = pinsker_certificate(&phi, &set, &cap_b.ensemble, cap_a.value.max(cap_b.value))
        .unwrap()
        .max(0.0);
    let dist = trace_distance(
        &output_average(&phi, &cap_a.ensemble).unwrap(),
        &output_average(&phi, &cap_b.ensemble).unwrap(),
    )
    .unwrap();
    let radius = (2.0 * delta_a).sqrt() + (2.0 * delta_b).sqrt() + 1e-6;
    assert!(
        dist <= radius,
        "output averages {dist} apart exceed the Pinsker radius {radius}"
    );
    assert!(cap_a.pinsker_slack <= 1e-6, "slack {}", cap_a.pinsker_slack);
}

#[test]
fn perturbed_witness_stays_within_pinsker_radius() {
    let mut rng = random::rng_for(85, 0);
    let phi = factory::random_channel(&mut rng, 2, 2, 2);
    let set = energy_ball(matrix::identity(2), 2.0, 2).unwrap();
    let cap = chi_capacity(&phi, &set, 4, &cfg(6)).unwrap();

    for _ in 0..5 {
        // random feasible ensemble of a state near the witness barycenter
        let rho = cap.ensemble.barycenter();
        let params: Vec<f64> = (0..2 * 4 * 2).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        let e = ensemble_from_params(&rho, 4, &params).unwrap();
        let slack = pinsker_certificate(&phi, &set, &e, cap.value).unwrap();
        if slack < 0.0 {
            continue; // found a better ensemble than the capacity estimate
        }
        let dist = trace_distance(
            &output_average(&phi, &e).unwrap(),
            &cap.omega,
        )
        .unwrap();
        assert!(
            0.5 * dist * dist <= slack + 1e-6,
            "Pinsker certificate violated: {} > {}",
            0.5 * dist * dist,
            slack
        );
    }
}

#[test]
fn additivity_floor_at_product_states() {
    // at product inputs, product ensembles certify superadditivity
    let mut rng = random::rng_for(86, 0);
    for _ in 0..2 {
        let mp = factory::random_measure_prepare(&mut rng, 2);
        let phi = mp.complementary();
        let psi = factory::random_channel(&mut rng, 2, 2, 2);
        let rho = State::new(random::random_density(&mut rng, 2)).unwrap();
        let sigma = State::new(random::random_density(&mut rng, 2)).unwrap();
        let omega = State::new(matrix::kron(rho.matrix(), sigma.matrix())).unwrap();
        let report = additivity_gap(&phi, &psi, &omega, 6, &cfg(7)).unwrap();
        assert!(
            report.gap >= -2e-3,
            "superadditivity floor violated: {}",
            report.gap
        );
        assert!(
            report.gap <= 2e-3,
            "additivity ceiling violated at product state: {}",
            report.gap
        );
    }
}
