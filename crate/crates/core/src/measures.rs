//! Quantities shared by every solver: the stopping residual, the gap
//! function and the bootstrap of the initial step.

use rand::Rng;

use crate::linalg::{dist, dot, norm, DenseVector};
use crate::problem::CountingOracle;
use crate::{ProblemInstance, Result, VipegError};

/// `‖x_next − y‖ + ‖x − y‖`; zero exactly when `x_next = x = y`.
pub fn residual(x_next: &[f64], x: &[f64], y: &[f64]) -> Result<f64> {
    if x_next.len() != x.len() || x.len() != y.len() {
        return Err(VipegError::InvalidInput(format!(
            "residual: dimension mismatch ({}, {}, {})",
            x_next.len(),
            x.len(),
            y.len()
        )));
    }
    Ok(dist(x_next, y) + dist(x, y))
}

/// `Φ(x, y) = ⟨F(x), y − x⟩ + g(y) − g(x)`. Returns `+inf` when `y ∉ dom g`.
pub fn gap_function(problem: &ProblemInstance, x: &[f64], y: &[f64]) -> Result<f64> {
    if !problem.has_g() {
        return Err(VipegError::Unsupported(format!(
            "gap function needs a g evaluator, problem '{}' has none",
            problem.name()
        )));
    }
    problem.check_dim(x, "x")?;
    problem.check_dim(y, "y")?;
    let gy = problem.g_value(y).unwrap_or(f64::INFINITY);
    if gy == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let gx = problem.g_value(x).unwrap_or(f64::INFINITY);
    let fx = problem.operator(x);
    let d: DenseVector = y.iter().zip(x).map(|(a, b)| a - b).collect();
    Ok(dot(&fx, &d) + gy - gx)
}

/// Number of fresh perturbations tried before falling back to `λ₀ = 1`.
pub const LAMBDA0_RETRIES: usize = 8;

/// Default perturbation magnitude `1e-3 · (1 + ‖y₀‖)`.
pub fn default_perturb_scale(y0: &[f64]) -> f64 {
    1e-3 * (1.0 + norm(y0))
}

/// Local inverse-Lipschitz estimate at `y0`.
///
/// Draws `y₋₁ = y₀ + s·u`, `u` uniform on `[−1, 1]^dim`, and returns
/// `‖y₋₁ − y₀‖ / ‖F(y₋₁) − F(y₀)‖`. A degenerate quotient is retried with
/// fresh noise, then `1.0` is returned.
pub fn init_lambda0<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    y0: &[f64],
    perturb_scale: f64,
    rng: &mut R,
) -> Result<f64> {
    let mut oracle = CountingOracle::new(problem);
    let f0 = oracle.operator(y0);
    bootstrap_lambda0(&mut oracle, y0, &f0, perturb_scale, rng)
}

/// [`init_lambda0`] reusing an already computed `F(y₀)`.
pub(crate) fn bootstrap_lambda0<R: Rng + ?Sized>(
    oracle: &mut CountingOracle<'_>,
    y0: &[f64],
    f0: &[f64],
    perturb_scale: f64,
    rng: &mut R,
) -> Result<f64> {
    if !(perturb_scale > 0.0 && perturb_scale.is_finite()) {
        return Err(VipegError::InvalidInput(format!("perturbation scale must be positive, got {perturb_scale}")));
    }
    for _ in 0..=LAMBDA0_RETRIES {
        let y_prev: DenseVector = y0.iter().map(|&v| v + perturb_scale * rng.gen_range(-1.0..=1.0)).collect();
        let f_prev = oracle.operator(&y_prev);
        let df = dist(&f_prev, f0);
        let dy = dist(&y_prev, y0);
        if df > 0.0 && dy > 0.0 && df.is_finite() {
            return Ok(dy / df);
        }
    }
    Ok(1.0)
}
