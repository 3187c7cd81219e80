use std::time::Instant;

use super::{BaselineConfig, MAX_LINESEARCH_TRIALS};
use crate::linalg::{all_finite, dist, norm, DenseVector};
use crate::problem::CountingOracle;
use crate::solvers::DIVERGENCE_FACTOR;
use crate::trace::{IterationRecord, RunResult, RunStatus};
use crate::{ProblemInstance, Result, VipegError};

/// Each iteration's linesearch starts from this multiple of the last accepted step.
pub const TFBF_GROWTH: f64 = 1.2;

/// Tseng's forward-backward-forward method with linesearch:
///
/// ```text
/// y_n     = prox_{λg}(x_n − λF(x_n))
/// x_{n+1} = y_n + λ(F(x_n) − F(y_n))
/// ```
///
/// with the largest `λ = λ_try·βᵏ` satisfying `λ‖F(x_n) − F(y_n)‖ ≤ θ‖x_n − y_n‖`.
/// Stops once `‖x_n − y_n‖ ≤ ε` for the accepted `λ`.
pub fn tfbf_solve(problem: &ProblemInstance, config: &BaselineConfig, x0: &[f64]) -> Result<RunResult> {
    config.validate()?;
    problem.check_dim(x0, "x0")?;
    let start = Instant::now();
    let mut oracle = CountingOracle::new(problem);
    let blowup = DIVERGENCE_FACTOR * (1.0 + norm(x0));

    let mut x = x0.to_vec();
    let mut lambda_trial = config.lambda0;
    let mut trace = Vec::new();
    let mut status = RunStatus::MaxIterReached;
    let mut final_residual = f64::INFINITY;

    for n in 0..=config.max_iter {
        let fx = oracle.operator(&x);
        if !all_finite(&fx) {
            status = RunStatus::Diverged;
            break;
        }
        let mut lambda = lambda_trial;
        let mut backtracks = 0;
        let (y, fy) = loop {
            let y = oracle.forward_backward(&x, &fx, lambda);
            let fy = oracle.operator(&y);
            let lhs = lambda * dist(&fx, &fy);
            if lhs <= config.theta * dist(&x, &y) || !lhs.is_finite() {
                break (y, fy);
            }
            if backtracks == MAX_LINESEARCH_TRIALS {
                return Err(VipegError::LinesearchFailure { method: "TFBF", backtracks, lambda });
            }
            lambda *= config.beta;
            backtracks += 1;
        };

        let r = dist(&x, &y);
        final_residual = r;
        if r <= config.epsilon {
            status = RunStatus::Converged;
            break;
        }
        if n == config.max_iter {
            break;
        }

        let x_next: DenseVector = y.iter().zip(fx.iter().zip(&fy)).map(|(yi, (a, b))| yi + lambda * (a - b)).collect();
        if !all_finite(&x_next) || norm(&x_next) > blowup {
            status = RunStatus::Diverged;
            break;
        }
        trace.push(IterationRecord {
            n: n + 1,
            residual: r,
            lambda,
            backtracks,
            f_calls_cum: oracle.f_calls(),
            prox_calls_cum: oracle.prox_calls(),
            elapsed: start.elapsed().as_secs_f64(),
            objective: if config.track_objective { problem.objective(&x_next) } else { None },
        });
        x = x_next;
        lambda_trial = TFBF_GROWTH * lambda;
    }

    Ok(RunResult {
        solver_name: "TFBF".into(),
        status,
        final_x: x,
        final_residual,
        trace,
        f_calls: oracle.f_calls(),
        prox_calls: oracle.prox_calls(),
        history: None,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
