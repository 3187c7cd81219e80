//! Step-size machinery: the `κ(δ)` bound on `α`, the prediction rule, the
//! growth schedule `φₙ` of the nonmonotone variant, and the correction bound `ζₙ`.

use crate::linalg::dist;
use crate::{Result, VipegError};

/// `(√5 − 1)/2`, the infimum of admissible extrapolation coefficients.
pub const DELTA_MIN: f64 = 0.618_033_988_749_894_9;

/// Quantities attached to a fixed `δ` in the closed form of `κ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaParams {
    pub delta: f64,
    /// `δ² / (δ² + δ − 1)`
    pub a: f64,
    /// maximizing `ε₁ = √(a + 1)`
    pub eps1: f64,
    /// maximizing `ε₂ = √(a + 1) − 1`
    pub eps2: f64,
}

impl KappaParams {
    pub fn new(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        let a = delta * delta / (delta * delta + delta - 1.0);
        let eps1 = (a + 1.0).sqrt();
        Ok(Self { delta, a, eps1, eps2: eps1 - 1.0 })
    }

    pub fn kappa(&self) -> f64 {
        self.eps1 / (self.delta * (self.a + 1.0 + self.eps1))
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta > DELTA_MIN {
        Ok(())
    } else {
        Err(VipegError::DeltaOutOfDomain { delta })
    }
}

/// Closed form `κ(δ) = √(a+1) / (δ(a + 1 + √(a+1)))`, `a = δ²/(δ²+δ−1)`.
pub fn kappa(delta: f64) -> Result<f64> {
    Ok(KappaParams::new(delta)?.kappa())
}

/// The two fractions whose minimum is maximized in the definition of `κ`.
fn kappa_objective(delta: f64, e1: f64, e2: f64) -> f64 {
    let first = e1 / (delta * (e1 * e1 + e2 + 1.0));
    let second = (delta * delta + delta - 1.0) * e1 * e2 / (delta.powi(3) * (1.0 + e2));
    first.min(second)
}

/// Brute-force evaluation of `κ(δ)` straight from its max–min definition.
///
/// Grid search over `(ln ε₁, ln ε₂) ∈ [−15, 25]²` with `grid_size` points per
/// axis, followed by four zoom passes around the best cell. The log scale keeps
/// the maximizer inside the box as `δ` approaches its lower limit, where it
/// drifts off to large `ε`.
pub fn kappa_oracle(delta: f64, grid_size: usize) -> Result<f64> {
    check_delta(delta)?;
    if grid_size < 100 {
        return Err(VipegError::InvalidInput(format!("kappa oracle needs grid_size >= 100, got {grid_size}")));
    }
    const LOG_LO: f64 = -15.0;
    const LOG_HI: f64 = 25.0;
    const ZOOMS: usize = 4;
    let mut lo = (LOG_LO, LOG_LO);
    let mut step = (LOG_HI - LOG_LO) / grid_size as f64;
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);

    for pass in 0..=ZOOMS {
        for i in 0..=grid_size {
            let t1 = lo.0 + i as f64 * step;
            let e1 = t1.exp();
            for j in 0..=grid_size {
                let t2 = lo.1 + j as f64 * step;
                let v = kappa_objective(delta, e1, t2.exp());
                if v > best.0 {
                    best = (v, t1, t2);
                }
            }
        }
        if pass < ZOOMS {
            // the maximizer sits on the ridge where both fractions agree, so the
            // best grid point can be far from it along the ridge: zoom to a
            // window of half-width √step around the incumbent
            let half = step.sqrt().max(2.0 * step);
            lo = (best.1 - half, best.2 - half);
            step = 2.0 * half / grid_size as f64;
        }
    }
    Ok(best.0)
}

/// Optional growth controls of the nonmonotone (IPEG) prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthCaps {
    /// `φ_{n−1}`
    pub phi: f64,
    /// `λ̂`
    pub lambda_hat: f64,
}

/// Predicted step: `min{λ_prev, α‖Δy‖/‖ΔF‖}`, or with `caps` present
/// `min{φ·λ_prev, α‖Δy‖/‖ΔF‖, λ̂}`. A vanishing `‖ΔF‖` makes the
/// local-Lipschitz term `+∞`.
pub fn predict_lambda(
    lambda_prev: f64,
    alpha: f64,
    y: &[f64],
    y_prev: &[f64],
    fy: &[f64],
    fy_prev: &[f64],
    caps: Option<GrowthCaps>,
) -> f64 {
    let df = dist(fy, fy_prev);
    let local = if df > 0.0 { alpha * dist(y, y_prev) / df } else { f64::INFINITY };
    match caps {
        None => lambda_prev.min(local),
        Some(c) => (c.phi * lambda_prev).min(local).min(c.lambda_hat),
    }
}

/// `φₙ = (1+δ)/δ` for `n ≤ n̂`, `(1+δ+n−n̂)/(δ+n−n̂)` afterwards, and exactly 1 from `n₀` on.
pub fn phi_schedule(n: usize, delta: f64, n_hat: usize, n_zero: usize) -> f64 {
    if n >= n_zero {
        1.0
    } else if n <= n_hat {
        (1.0 + delta) / delta
    } else {
        let k = (n - n_hat) as f64;
        (1.0 + delta + k) / (delta + k)
    }
}

/// `ζₙ = max{ζ_min, min{μ‖xₙ − xₙ₋₁‖, ν‖x₁ − x₀‖}}`.
pub fn zeta_update(x: &[f64], x_prev: &[f64], x1: &[f64], x0: &[f64], zeta_min: f64, mu: f64, nu: f64) -> f64 {
    zeta_from_norms(dist(x, x_prev), dist(x1, x0), zeta_min, mu, nu)
}

/// [`zeta_update`] with the two displacement norms already computed.
pub fn zeta_from_norms(step_norm: f64, first_step_norm: f64, zeta_min: f64, mu: f64, nu: f64) -> f64 {
    zeta_min.max((mu * step_norm).min(nu * first_step_norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kappa_peaks_at_sqrt3_minus_1() {
        let d = 3f64.sqrt() - 1.0;
        let p = KappaParams::new(d).unwrap();
        assert_abs_diff_eq!(p.a, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.eps1, 3f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(kappa(d).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn kappa_at_one_is_sqrt2_minus_1() {
        assert_abs_diff_eq!(kappa(1.0).unwrap(), 2f64.sqrt() - 1.0, epsilon = 1e-12);
    }

    #[test]
    fn kappa_near_peak() {
        let k = kappa(0.73).unwrap();
        assert!(k < 0.5 && (0.5 - k) < 2e-5, "kappa(0.73) = {k}");
    }

    #[test]
    fn kappa_rejects_small_delta() {
        assert!(matches!(kappa(0.6), Err(VipegError::DeltaOutOfDomain { .. })));
        assert!(kappa(DELTA_MIN).is_err());
        assert!(kappa(f64::NAN).is_err());
        assert!(kappa_oracle(0.5, 200).is_err());
        assert!(kappa_oracle(1.0, 50).is_err());
    }

    #[test]
    fn kappa_vanishes_at_the_boundary() {
        assert!(kappa(DELTA_MIN + 1e-4).unwrap() < 0.05);
    }

    #[test]
    fn oracle_matches_peak_value() {
        let v = kappa_oracle(3f64.sqrt() - 1.0, 400).unwrap();
        assert_abs_diff_eq!(v, 0.5, epsilon = 1e-6);
    }

    #[test]
    fn oracle_matches_closed_form() {
        for d in [DELTA_MIN + 1e-3, 0.65, 0.7, 0.73, 0.8, 0.9, 1.0, 1.2, 1.5, 2.0, 3.0] {
            let o = kappa_oracle(d, 400).unwrap();
            assert_abs_diff_eq!(o, kappa(d).unwrap(), epsilon = 1e-6);
        }
    }

    #[test]
    fn predict_peg_mode() {
        let y = [1.0, 2.0];
        let yp = [0.0, 0.0];
        // ΔF = 0
        assert_eq!(predict_lambda(3.0, 0.41, &y, &yp, &[1.0, 1.0], &[1.0, 1.0], None), 3.0);
        // F = identity
        assert_abs_diff_eq!(predict_lambda(10.0, 0.41, &y, &yp, &y, &yp, None), 0.41, epsilon = 1e-15);
    }

    #[test]
    fn predict_ipeg_cap_binds() {
        // quotient α‖Δy‖/‖ΔF‖ = 0.9
        let y = [1.0];
        let yp = [0.0];
        let caps = GrowthCaps { phi: 2.0, lambda_hat: 0.5 };
        let l = predict_lambda(0.3, 0.9, &y, &yp, &[1.0], &[0.0], Some(caps));
        assert_eq!(l, 0.5);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_schedule(0, 1.0, 500, 1000), 2.0);
        assert_abs_diff_eq!(phi_schedule(501, 1.0, 500, 1000), 1.5, epsilon = 1e-15);
        assert_eq!(phi_schedule(1_000_000, 1.0, 500, 1000), 1.0);
    }

    #[test]
    fn zeta_examples() {
        let x0 = [0.0];
        let x1 = [1.0];
        assert_eq!(zeta_update(&[2.0], &[2.0], &x1, &x0, 1e-6, 10.0, 10.0), 1e-6);
        assert_abs_diff_eq!(zeta_update(&[0.2], &[0.0], &x1, &x0, 1e-6, 10.0, 10.0), 2.0, epsilon = 1e-14);
        assert_eq!(zeta_update(&[5.0], &[0.0], &x1, &x0, 1e-6, 10.0, 10.0), 10.0);
    }
}
