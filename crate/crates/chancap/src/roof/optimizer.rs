//! Seeded multi-start Nelder-Mead minimization.
//!
//! The roof functionals are nonconvex in the ensemble parameterization, so
//! every optimization runs a batch of independent simplex descents from
//! deterministic starting points and reports the spread across restarts as
//! the honest error bar. Restart streams derive from the configured seed;
//! restarts may run in parallel and the reduction is order-independent.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linops::random::rng_for;

/// Budget and reproducibility knobs for a multi-start run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Independent restarts (first ones consume caller-provided warm starts).
    pub restarts: usize,
    /// Per-restart iteration cap; 0 picks a dimension-scaled default.
    pub max_iters: usize,
    /// Per-restart objective tolerance.
    pub tol: f64,
    /// Base seed for the restart streams.
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iters: 0,
            tol: 1e-6,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts.max(1);
        self
    }

    pub fn effective_iters(&self, n_params: usize) -> usize {
        if self.max_iters > 0 {
            self.max_iters
        } else {
            (150 * n_params + 300).min(20_000)
        }
    }
}

/// Outcome of a multi-start minimization.
#[derive(Debug, Clone)]
pub struct MultistartOutcome {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    /// Final value of every restart, in restart order.
    pub restart_values: Vec<f64>,
    /// Final point of every restart, in restart order.
    pub restart_points: Vec<Vec<f64>>,
    /// max - min over finite restart values.
    pub spread: f64,
    pub converged: bool,
}

/// Minimize `f` over `R^n` from `starts` plus seeded Gaussian starting
/// points, `cfg.restarts` descents in total. Ties resolve by restart index,
/// so the outcome does not depend on scheduling.
pub fn minimize_multistart<F>(
    f: &F,
    n_params: usize,
    cfg: &OptimizerConfig,
    starts: &[Vec<f64>],
) -> MultistartOutcome
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let restarts = cfg.restarts.max(1).max(starts.len());
    let max_iters = cfg.effective_iters(n_params);
    let results: Vec<(Vec<f64>, f64, bool)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let x0 = if r < starts.len() {
                starts[r].clone()
            } else {
                let mut rng = rng_for(cfg.seed, 0x9e37_79b9 + r as u64);
                (0..n_params)
                    .map(|_| rng.random::<f64>() * 2.0 - 1.0)
                    .collect()
            };
            nelder_mead(f, &x0, max_iters, cfg.tol)
        })
        .collect();

    let mut best_idx = 0;
    for (i, r) in results.iter().enumerate() {
        if r.1 < results[best_idx].1 {
            best_idx = i;
        }
    }
    let restart_values: Vec<f64> = results.iter().map(|r| r.1).collect();
    let finite: Vec<f64> = restart_values.iter().copied().filter(|v| v.is_finite()).collect();
    let spread = match (
        finite.iter().copied().reduce(f64::max),
        finite.iter().copied().reduce(f64::min),
    ) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => 0.0,
    };
    MultistartOutcome {
        best_point: results[best_idx].0.clone(),
        best_value: results[best_idx].1,
        converged: results[best_idx].2,
        restart_points: results.into_iter().map(|r| r.0).collect(),
        restart_values,
        spread,
    }
}

/// Plain Nelder-Mead with standard coefficients; terminates when the
/// function spread over the simplex drops below `tol`.
pub fn nelder_mead<F>(f: &F, x0: &[f64], max_iters: usize, tol: f64) -> (Vec<f64>, f64, bool)
where
    F: Fn(&[f64]) -> f64,
{
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink
    const STEP: f64 = 0.25;

    let n = x0.len();
    if n == 0 {
        let v = f(x0);
        return (x0.to_vec(), v, true);
    }
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.to_vec());
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += STEP;
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();

    let mut converged = false;
    for _ in 0..max_iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        if (values[worst] - values[best]).abs() < tol {
            converged = true;
            break;
        }

        // centroid of all but the worst vertex
        let mut centroid = vec![0.0; n];
        for &i in &order[..n] {
            for (c, xi) in centroid.iter_mut().zip(&simplex[i]) {
                *c += xi / n as f64;
            }
        }

        let reflect: Vec<f64> = centroid
            .iter()
            .zip(&simplex[worst])
            .map(|(c, w)| c + ALPHA * (c - w))
            .collect();
        let f_reflect = f(&reflect);

        if f_reflect < values[best] {
            let expand: Vec<f64> = centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + GAMMA * (c - w))
                .collect();
            let f_expand = f(&expand);
            if f_expand < f_reflect {
                simplex[worst] = expand;
                values[worst] = f_expand;
            } else {
                simplex[worst] = reflect;
                values[worst] = f_reflect;
            }
            continue;
        }
        if f_reflect < values[second_worst] {
            simplex[worst] = reflect;
            values[worst] = f_reflect;
            continue;
        }

        // contraction, outside or inside
        let (contract, f_contract) = if f_reflect < values[worst] {
            let point: Vec<f64> = centroid
                .iter()
                .zip(&reflect)
                .map(|(c, r)| c + RHO * (r - c))
                .collect();
            let v = f(&point);
            (point, v)
        } else {
            let point: Vec<f64> = centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| c + RHO * (w - c))
                .collect();
            let v = f(&point);
            (point, v)
        };
        if f_contract < values[worst].min(f_reflect) {
            simplex[worst] = contract;
            values[worst] = f_contract;
            continue;
        }

        // shrink toward the best vertex
        let best_point = simplex[best].clone();
        for i in 0..=n {
            if i == best {
                continue;
            }
            for (x, b) in simplex[i].iter_mut().zip(&best_point) {
                *x = b + SIGMA * (*x - b);
            }
            values[i] = f(&simplex[i]);
        }
    }

    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    (simplex[best].clone(), values[best], converged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let f = |x: &[f64]| (x[0] - 1.5).powi(2) + (x[1] + 0.5).powi(2) + 3.0;
        let out = minimize_multistart(&f, 2, &OptimizerConfig::default(), &[]);
        assert!((out.best_value - 3.0).abs() < 1e-6);
        assert!((out.best_point[0] - 1.5).abs() < 1e-3);
        assert!(out.converged);
    }

    #[test]
    fn multistart_is_reproducible() {
        let f = |x: &[f64]| x.iter().map(|v| v.sin() + v * v * 0.1).sum::<f64>();
        let cfg = OptimizerConfig {
            restarts: 8,
            ..OptimizerConfig::default()
        };
        let a = minimize_multistart(&f, 4, &cfg, &[]);
        let b = minimize_multistart(&f, 4, &cfg, &[]);
        assert_eq!(a.best_value.to_bits(), b.best_value.to_bits());
        assert_eq!(a.restart_values.len(), 8);
    }

    #[test]
    fn warm_start_is_honored() {
        // narrow well at the warm start that random restarts would miss
        let f = |x: &[f64]| {
            let d2: f64 = x.iter().map(|v| (v - 37.0).powi(2)).sum();
            (d2 / 0.01).min(1.0)
        };
        let cfg = OptimizerConfig {
            restarts: 4,
            ..OptimizerConfig::default()
        };
        let warm = vec![vec![37.0, 37.0, 37.0]];
        let out = minimize_multistart(&f, 3, &cfg, &warm);
        assert!(out.best_value < 1e-8);
    }
}
