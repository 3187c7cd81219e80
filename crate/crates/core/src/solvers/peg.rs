//! Main loop shared by PEG (monotone steps, correction only for `δ < 1`) and
//! IPEG (nonmonotone steps, correction for every `δ`).

use std::time::Instant;

use rand::Rng;

use super::correction::correction_step;
use crate::config::{Lambda0Policy, SolverConfig};
use crate::linalg::{all_finite, dist, extrapolate, norm, DenseVector};
use crate::measures::{bootstrap_lambda0, default_perturb_scale};
use crate::problem::CountingOracle;
use crate::stepsize::{phi_schedule, predict_lambda, zeta_from_norms, GrowthCaps};
use crate::trace::{IterateHistory, IterationRecord, RunResult, RunStatus};
use crate::{ProblemInstance, Result};

/// Relative threshold standing in for the exact test `x_{n+1} = x_n = y_n`.
pub const STATIONARY_TOL: f64 = 1e-14;

/// Iterates growing past `DIVERGENCE_FACTOR · (1 + ‖x₀‖)` are flagged as diverged.
pub const DIVERGENCE_FACTOR: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Variant {
    Monotone,
    Nonmonotone,
}

/// Rolling state of one run.
struct IterationState {
    x_prev: DenseVector,
    x: DenseVector,
    y_prev: DenseVector,
    fy_prev: DenseVector,
    lambda_prev: f64,
    /// `‖x₁ − x₀‖`, the reference scale of the correction bound
    zeta_ref_norm: f64,
}

pub(crate) fn run<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &SolverConfig,
    x0: &[f64],
    rng: &mut R,
    variant: Variant,
    name: &str,
) -> Result<RunResult> {
    config.validate()?;
    problem.check_dim(x0, "x0")?;
    let start = Instant::now();
    let mut oracle = CountingOracle::new(problem);

    // Step 0: y₀ = x₀, x₁ = prox_{λ₀g}(x₀ − λ₀F(x₀))
    let f0 = oracle.operator(x0);
    let lambda0 = match config.lambda0 {
        Lambda0Policy::Explicit(l) => l,
        Lambda0Policy::Perturbation { scale } => {
            let s = scale.unwrap_or_else(|| default_perturb_scale(x0));
            bootstrap_lambda0(&mut oracle, x0, &f0, s, rng)?
        }
    };
    let x1 = oracle.forward_backward(x0, &f0, lambda0);
    let mut st = IterationState {
        zeta_ref_norm: dist(&x1, x0),
        x_prev: x0.to_vec(),
        x: x1,
        y_prev: x0.to_vec(),
        fy_prev: f0,
        lambda_prev: lambda0,
    };

    let mut history = config.record_iterates.then(|| IterateHistory {
        xs: vec![x0.to_vec()],
        ys: vec![x0.to_vec()],
        lambdas: vec![lambda0],
    });
    let blowup = DIVERGENCE_FACTOR * (1.0 + norm(x0));
    let correct = config.correction && (variant == Variant::Nonmonotone || config.delta < 1.0);
    let track_objective = config.track_objective && problem.has_f() && problem.has_g();

    let mut trace = Vec::new();
    let mut status = RunStatus::MaxIterReached;
    let mut final_residual = f64::INFINITY;

    if !all_finite(&st.x) {
        status = RunStatus::Diverged;
    }

    let mut n = 0;
    while status == RunStatus::MaxIterReached && n < config.max_iter {
        n += 1;
        // Step 1.a: extrapolate and predict
        let y = extrapolate(&st.x, &st.x_prev, config.delta);
        let fy = oracle.operator(&y);
        if !all_finite(&y) || !all_finite(&fy) {
            status = RunStatus::Diverged;
            break;
        }
        let caps = match variant {
            Variant::Monotone => None,
            Variant::Nonmonotone => Some(GrowthCaps {
                phi: phi_schedule(n - 1, config.delta, config.n_hat, config.n_zero),
                lambda_hat: config.lambda_hat,
            }),
        };
        let predicted = predict_lambda(st.lambda_prev, config.alpha, &y, &st.y_prev, &fy, &st.fy_prev, caps);

        // Step 1.b and Step 2
        let (x_next, lambda, backtracks) = if correct {
            let zeta =
                zeta_from_norms(dist(&st.x, &st.x_prev), st.zeta_ref_norm, config.zeta_min, config.mu, config.nu);
            let out = correction_step(&mut oracle, &st.x, &fy, predicted, zeta, config.gamma)?;
            (out.x_next, out.lambda, out.backtracks)
        } else {
            (oracle.forward_backward(&st.x, &fy, predicted), predicted, 0)
        };

        if !all_finite(&x_next) || norm(&x_next) > blowup {
            status = RunStatus::Diverged;
            st.x_prev = std::mem::replace(&mut st.x, x_next);
            break;
        }

        let r = dist(&x_next, &y) + dist(&st.x, &y);
        final_residual = r;
        trace.push(IterationRecord {
            n,
            residual: r,
            lambda,
            backtracks,
            f_calls_cum: oracle.f_calls(),
            prox_calls_cum: oracle.prox_calls(),
            elapsed: start.elapsed().as_secs_f64(),
            objective: if track_objective { problem.objective(&x_next) } else { None },
        });
        if let Some(h) = history.as_mut() {
            h.xs.push(st.x.clone());
            h.ys.push(y.clone());
            h.lambdas.push(lambda);
        }

        if r < STATIONARY_TOL * (1.0 + norm(&st.x)) {
            status = RunStatus::StationaryStop;
        } else if r < config.epsilon {
            status = RunStatus::Converged;
        }

        st.x_prev = std::mem::replace(&mut st.x, x_next);
        st.y_prev = y;
        st.fy_prev = fy;
        st.lambda_prev = lambda;
    }

    if let Some(h) = history.as_mut() {
        h.xs.push(st.x.clone());
    }
    let final_x = if status == RunStatus::Diverged && !all_finite(&st.x) { st.x_prev } else { st.x };
    Ok(RunResult {
        solver_name: name.to_string(),
        status,
        final_x,
        final_residual,
        trace,
        f_calls: oracle.f_calls(),
        prox_calls: oracle.prox_calls(),
        history,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
