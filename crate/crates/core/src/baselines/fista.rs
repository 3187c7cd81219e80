use std::time::Instant;

use super::{BaselineConfig, MAX_LINESEARCH_TRIALS};
use crate::linalg::{all_finite, dist, dot, norm, sub, DenseVector};
use crate::problem::CountingOracle;
use crate::solvers::DIVERGENCE_FACTOR;
use crate::trace::{IterationRecord, RunResult, RunStatus};
use crate::{ProblemInstance, Result, VipegError};

/// FISTA with backtracking for `min f + g`, where the problem operator is `∇f`.
///
/// The step `λ = 1/L` is shrunk by `β` until
/// `f(x) ≤ f(y) + ⟨∇f(y), x − y⟩ + ‖x − y‖² / (2λ)` holds at
/// `x = prox_{λg}(y − λ∇f(y))`. Stops once `‖x_{k+1} − y_k‖ < ε`.
/// Requires `f`; objective evaluations are not counted as operator calls.
pub fn fista_solve(problem: &ProblemInstance, config: &BaselineConfig, x0: &[f64]) -> Result<RunResult> {
    config.validate()?;
    problem.check_dim(x0, "x0")?;
    if !problem.has_f() {
        return Err(VipegError::Unsupported(format!(
            "FISTA needs the smooth objective f, which problem '{}' does not provide",
            problem.name()
        )));
    }
    let f = |x: &[f64]| problem.f_value(x).unwrap_or(f64::NAN);
    let start = Instant::now();
    let mut oracle = CountingOracle::new(problem);
    let blowup = DIVERGENCE_FACTOR * (1.0 + norm(x0));

    let mut x_prev: DenseVector = x0.to_vec();
    let mut y: DenseVector = x0.to_vec();
    let mut t = 1.0f64;
    let mut lambda = config.lambda0;
    let mut trace = Vec::new();
    let mut status = RunStatus::MaxIterReached;
    let mut final_residual = f64::INFINITY;

    for k in 1..=config.max_iter {
        let grad = oracle.operator(&y);
        let fy = f(&y);
        if !all_finite(&grad) || !fy.is_finite() {
            status = RunStatus::Diverged;
            break;
        }
        let mut backtracks = 0;
        let x = loop {
            let x = oracle.forward_backward(&y, &grad, lambda);
            let d = sub(&x, &y);
            let model = fy + dot(&grad, &d) + dot(&d, &d) / (2.0 * lambda);
            if f(&x) <= model + 1e-12 * fy.abs().max(1.0) {
                break x;
            }
            if backtracks == MAX_LINESEARCH_TRIALS {
                return Err(VipegError::LinesearchFailure { method: "FISTA", backtracks, lambda });
            }
            lambda *= config.beta;
            backtracks += 1;
        };
        if !all_finite(&x) || norm(&x) > blowup {
            status = RunStatus::Diverged;
            break;
        }

        let r = dist(&x, &y);
        final_residual = r;
        trace.push(IterationRecord {
            n: k,
            residual: r,
            lambda,
            backtracks,
            f_calls_cum: oracle.f_calls(),
            prox_calls_cum: oracle.prox_calls(),
            elapsed: start.elapsed().as_secs_f64(),
            objective: if config.track_objective { problem.objective(&x) } else { None },
        });

        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t * t).sqrt());
        let momentum = (t - 1.0) / t_next;
        y = x.iter().zip(&x_prev).map(|(a, b)| a + momentum * (a - b)).collect();
        x_prev = x;
        t = t_next;
        if r < config.epsilon {
            status = RunStatus::Converged;
            break;
        }
    }

    Ok(RunResult {
        solver_name: "FISTA".into(),
        status,
        final_x: x_prev,
        final_residual,
        trace,
        f_calls: oracle.f_calls(),
        prox_calls: oracle.prox_calls(),
        history: None,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prox::{g_for, prox_for, ProxSpec};

    fn lasso_1d(weight: f64) -> ProblemInstance {
        // f = (x − 3)² / 2, g = w|x|, solution x* = 3 − w
        let spec = ProxSpec::L1 { weight };
        let prox = prox_for(spec).unwrap();
        ProblemInstance::new("lasso1d", 1, |x: &[f64]| vec![x[0] - 3.0], move |v: &[f64], l| prox(v, l))
            .with_f(|x: &[f64]| 0.5 * (x[0] - 3.0).powi(2))
            .with_g(g_for(spec).unwrap())
    }

    #[test]
    fn solves_scalar_lasso() {
        let p = lasso_1d(1.0);
        let res = fista_solve(&p, &BaselineConfig::default(), &[0.0]).unwrap();
        assert_eq!(res.status, RunStatus::Converged);
        assert!((res.final_x[0] - 2.0).abs() < 1e-5);
        assert_eq!(res.f_calls as usize, res.iterations());
    }

    #[test]
    fn backtracks_from_oversized_step() {
        let p = ProblemInstance::new("quad", 1, |x: &[f64]| vec![10.0 * x[0]], |v: &[f64], _| v.to_vec())
            .with_f(|x: &[f64]| 5.0 * x[0] * x[0]);
        let res = fista_solve(&p, &BaselineConfig::default(), &[1.0]).unwrap();
        assert_eq!(res.status, RunStatus::Converged);
        assert!(res.total_backtracks() > 0);
        assert!(res.trace.iter().all(|r| r.lambda <= 0.1 + 1e-12));
    }

    #[test]
    fn requires_objective() {
        let p = ProblemInstance::new("nof", 1, |x: &[f64]| x.to_vec(), |v: &[f64], _| v.to_vec());
        assert!(matches!(fista_solve(&p, &BaselineConfig::default(), &[1.0]), Err(VipegError::Unsupported(_))));
    }
}
