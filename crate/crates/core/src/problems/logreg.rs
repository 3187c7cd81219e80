use super::dataset::DatasetFixture;
use super::matrix::power_iteration;
use crate::linalg::norm_inf;
use crate::prox::{g_for, prox_for, ProxSpec};
use crate::{ProblemInstance, Result, VipegError};

/// `log(1 + eᵗ)` without overflow.
pub fn softplus(t: f64) -> f64 {
    t.max(0.0) + (-t.abs()).exp().ln_1p()
}

/// `1 / (1 + e^{−t})` without overflow.
pub fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

/// `μ = mu_factor · ‖Hᵀl‖∞ / m`, the weight paired with the averaged loss.
pub fn logreg_mu(data: &DatasetFixture, mu_factor: f64) -> f64 {
    let htl = data.features.matvec_t(&data.labels);
    mu_factor * norm_inf(&htl) / data.samples() as f64
}

/// Sparse logistic regression
/// `min μ‖x‖₁ + (1/m) Σ log(1 + exp((Kx)_i))` with `K_ij = −l_i h_ij`.
///
/// `F = (1/m)Kᵀσ(Kx)` is the gradient of the loss and `L = ‖KᵀK‖₂ / (4m)`.
pub fn make_logreg(data: &DatasetFixture, mu_factor: f64) -> Result<ProblemInstance> {
    let m = data.samples();
    let n = data.features_count();
    if m == 0 || n == 0 {
        return Err(VipegError::InvalidInput("logistic regression needs a nonempty dataset".into()));
    }
    if !(mu_factor > 0.0 && mu_factor.is_finite()) {
        return Err(VipegError::InvalidInput(format!("mu_factor = {mu_factor} must be positive")));
    }
    let neg_labels: Vec<f64> = data.labels.iter().map(|l| -l).collect();
    let k = data.features.scale_rows(&neg_labels);
    let inv_m = 1.0 / m as f64;
    let ktk = power_iteration(|v| k.matvec_t(&k.matvec(v)), n, 100_000, 1e-12);
    let lip = (ktk * inv_m / 4.0).max(f64::MIN_POSITIVE);

    let spec = ProxSpec::L1 { weight: logreg_mu(data, mu_factor) };
    let prox = prox_for(spec)?;
    let k_f = k.clone();
    Ok(ProblemInstance::new(
        format!("logreg-{m}x{n}"),
        n,
        move |x: &[f64]| {
            let s: Vec<f64> = k.matvec(x).into_iter().map(sigmoid).collect();
            k.matvec_t(&s).into_iter().map(|v| v * inv_m).collect()
        },
        move |v: &[f64], l| prox(v, l),
    )
    .with_f(move |x: &[f64]| k_f.matvec(x).into_iter().map(softplus).sum::<f64>() * inv_m)
    .with_g(g_for(spec)?)
    .with_lipschitz(lip))
}
