use crate::linalg::{dist, DenseVector};
use crate::problem::CountingOracle;
use crate::{Result, VipegError};

/// Hard cap on correction backtracks. Termination is guaranteed in exact
/// arithmetic; the cap catches underflow and inconsistent prox oracles.
pub const MAX_CORRECTION_BACKTRACKS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionOutcome {
    pub x_next: DenseVector,
    pub lambda: f64,
    pub backtracks: usize,
}

/// Compute `x_next = prox_{λg}(x − λ·F(y))`, shrinking `λ ← γλ` until
/// `‖x_next − x‖ ≤ ζ`. Costs one prox per trial and no operator evaluations.
pub fn correction_step(
    oracle: &mut CountingOracle<'_>,
    x: &[f64],
    fy: &[f64],
    lambda_in: f64,
    zeta: f64,
    gamma: f64,
) -> Result<CorrectionOutcome> {
    if !(lambda_in > 0.0 && zeta > 0.0 && gamma > 0.0 && gamma < 1.0) {
        return Err(VipegError::InvalidInput(format!(
            "correction needs lambda > 0, zeta > 0, 0 < gamma < 1 (got {lambda_in}, {zeta}, {gamma})"
        )));
    }
    let mut lambda = lambda_in;
    let mut backtracks = 0;
    loop {
        let x_next = oracle.forward_backward(x, fy, lambda);
        let displacement = dist(&x_next, x);
        if displacement <= zeta {
            return Ok(CorrectionOutcome { x_next, lambda, backtracks });
        }
        if backtracks == MAX_CORRECTION_BACKTRACKS {
            return Err(VipegError::CorrectionFailure { backtracks, lambda, displacement, zeta });
        }
        lambda *= gamma;
        backtracks += 1;
    }
}
