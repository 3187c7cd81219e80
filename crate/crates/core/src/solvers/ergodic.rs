use crate::linalg::DenseVector;
use crate::{Result, VipegError};

/// Step-weighted ergodic iterate started at `n1`:
///
/// `λ̂ⱼ = Σ_{l=n1}^{j} λ_l + δλ_{n1}`,
/// `x̂ⱼ = (Σ_{l=n1+1}^{j} λ_l y_l + (1+δ)λ_{n1} x_{n1}) / λ̂ⱼ`.
///
/// `lambdas[l]` and `ys[l]` are indexed by iteration number; both must cover `n1..=j`.
/// Returns `(x̂ⱼ, λ̂ⱼ)`.
pub fn ergodic_iterate(
    lambdas: &[f64],
    ys: &[DenseVector],
    x_n1: &[f64],
    delta: f64,
    n1: usize,
    j: usize,
) -> Result<(DenseVector, f64)> {
    if n1 >= j {
        return Err(VipegError::InvalidInput(format!("ergodic average needs n1 < j, got {n1} >= {j}")));
    }
    if lambdas.len() <= j || ys.len() <= j {
        return Err(VipegError::InvalidInput(format!(
            "ergodic average up to j = {j} needs {} entries, got {} step sizes and {} points",
            j + 1,
            lambdas.len(),
            ys.len()
        )));
    }
    if ys[n1 + 1..=j].iter().any(|y| y.len() != x_n1.len()) {
        return Err(VipegError::InvalidInput("ergodic average: dimension mismatch".into()));
    }
    let lambda_n1 = lambdas[n1];
    let normalizer: f64 = lambdas[n1..=j].iter().sum::<f64>() + delta * lambda_n1;

    let w0 = (1.0 + delta) * lambda_n1;
    let mut acc: DenseVector = x_n1.iter().map(|v| w0 * v).collect();
    for l in n1 + 1..=j {
        for (a, y) in acc.iter_mut().zip(&ys[l]) {
            *a += lambdas[l] * y;
        }
    }
    acc.iter_mut().for_each(|a| *a /= normalizer);
    Ok((acc, normalizer))
}
