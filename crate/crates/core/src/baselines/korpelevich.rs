use std::time::Instant;

use super::BaselineConfig;
use crate::linalg::{all_finite, dist, norm, DenseVector};
use crate::problem::CountingOracle;
use crate::solvers::DIVERGENCE_FACTOR;
use crate::trace::{IterationRecord, RunResult, RunStatus};
use crate::{ProblemInstance, Result, VipegError};

/// Fixed-step extragradient method:
///
/// ```text
/// y_n     = prox_{λg}(x_n − λF(x_n))
/// x_{n+1} = prox_{λg}(x_n − λF(y_n))
/// ```
///
/// with `λ = lambda_fixed` or `0.9 / L`. Stops once `‖x_n − y_n‖ ≤ ε`.
pub fn korpelevich_solve(problem: &ProblemInstance, config: &BaselineConfig, x0: &[f64]) -> Result<RunResult> {
    config.validate()?;
    problem.check_dim(x0, "x0")?;
    let lambda = match (config.lambda_fixed, problem.lipschitz()) {
        (Some(l), _) => l,
        (None, Some(lip)) if lip > 0.0 && lip.is_finite() => 0.9 / lip,
        (None, _) => {
            return Err(VipegError::Unsupported(format!(
                "Korpelevich needs a Lipschitz constant or an explicit step; problem '{}' has neither",
                problem.name()
            )))
        }
    };
    let start = Instant::now();
    let mut oracle = CountingOracle::new(problem);
    let blowup = DIVERGENCE_FACTOR * (1.0 + norm(x0));

    let mut x: DenseVector = x0.to_vec();
    let mut trace = Vec::new();
    let mut status = RunStatus::MaxIterReached;
    let mut final_residual = f64::INFINITY;

    for n in 0..=config.max_iter {
        let fx = oracle.operator(&x);
        if !all_finite(&fx) {
            status = RunStatus::Diverged;
            break;
        }
        let y = oracle.forward_backward(&x, &fx, lambda);
        let r = dist(&x, &y);
        final_residual = r;
        if r <= config.epsilon {
            status = RunStatus::Converged;
            break;
        }
        if n == config.max_iter {
            break;
        }
        let fy = oracle.operator(&y);
        let x_next = oracle.forward_backward(&x, &fy, lambda);
        if !all_finite(&x_next) || norm(&x_next) > blowup {
            status = RunStatus::Diverged;
            break;
        }
        trace.push(IterationRecord {
            n: n + 1,
            residual: r,
            lambda,
            backtracks: 0,
            f_calls_cum: oracle.f_calls(),
            prox_calls_cum: oracle.prox_calls(),
            elapsed: start.elapsed().as_secs_f64(),
            objective: if config.track_objective { problem.objective(&x_next) } else { None },
        });
        x = x_next;
    }

    Ok(RunResult {
        solver_name: "Korpelevich".into(),
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

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation(lip: Option<f64>) -> ProblemInstance {
        let p = ProblemInstance::new("rot", 2, |x: &[f64]| vec![x[1], -x[0]], |v: &[f64], _| v.to_vec());
        match lip {
            Some(l) => p.with_lipschitz(l),
            None => p,
        }
    }

    #[test]
    fn converges_on_bilinear_saddle() {
        let p = rotation(Some(1.0));
        let res = korpelevich_solve(&p, &BaselineConfig::default(), &[1.0, 1.0]).unwrap();
        assert_eq!(res.status, RunStatus::Converged);
        assert!(norm(&res.final_x) < 1e-5);
        assert!(res.trace.iter().all(|r| (r.lambda - 0.9).abs() < 1e-15));
        // two operator and two prox calls per iteration plus the final check
        assert_eq!(res.f_calls as usize, 2 * res.iterations() + 1);
        assert_eq!(res.prox_calls as usize, 2 * res.iterations() + 1);
    }

    #[test]
    fn needs_lipschitz_or_step() {
        let p = rotation(None);
        assert!(matches!(
            korpelevich_solve(&p, &BaselineConfig::default(), &[1.0, 1.0]),
            Err(VipegError::Unsupported(_))
        ));
        let cfg = BaselineConfig { lambda_fixed: Some(0.5), ..Default::default() };
        assert!(korpelevich_solve(&p, &cfg, &[1.0, 1.0]).is_ok());
    }
}
