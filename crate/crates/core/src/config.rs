use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::stepsize::{kappa, DELTA_MIN};
use crate::{Result, VipegError};

/// How the initial step `λ₀` is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Lambda0Policy {
    Explicit(f64),
    /// `λ₀ = ‖y₋₁ − y₀‖ / ‖F(y₋₁) − F(y₀)‖` with `y₋₁` a uniform perturbation of `y₀`.
    /// `scale: None` means `1e-3 · (1 + ‖y₀‖)`.
    Perturbation {
        scale: Option<f64>,
    },
}

/// Tunables of PEG / IPEG.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub delta: f64,
    pub alpha: f64,
    /// backtracking factor of the correction step
    pub gamma: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    /// IPEG upper bound on the step
    pub lambda_hat: f64,
    pub n_hat: usize,
    pub n_zero: usize,
    pub zeta_min: f64,
    pub mu: f64,
    pub nu: f64,
    pub lambda0: Lambda0Policy,
    pub rng_seed: u64,
    /// Run the correction step where the method calls for it. Turning it off is
    /// only sound when `F = ∇f` for a convex `f`.
    pub correction: bool,
    /// Keep every `x_n`, `y_n`, `λ_n` (needed for ergodic averages).
    pub record_iterates: bool,
    /// Evaluate `f + g` at each accepted iterate when the problem provides both.
    pub track_objective: bool,
}

impl SolverConfig {
    /// Defaults follow the published experimental protocol:
    /// `γ = 0.7`, `ε = 1e-6`, `ζ_min = 1e-6`, `μ = ν = 10`, `n̂ = 500`, `n₀ = 1000`, `λ̂ = 1e6`.
    pub fn new(delta: f64, alpha: f64) -> Result<Self> {
        let cfg = Self {
            delta,
            alpha,
            gamma: 0.7,
            epsilon: 1e-6,
            max_iter: 100_000,
            lambda_hat: 1e6,
            n_hat: 500,
            n_zero: 1000,
            zeta_min: 1e-6,
            mu: 10.0,
            nu: 10.0,
            lambda0: Lambda0Policy::Perturbation { scale: None },
            rng_seed: 0,
            correction: true,
            record_iterates: false,
            track_objective: false,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(VipegError::Config(msg));
        if !(self.delta > DELTA_MIN) || !self.delta.is_finite() {
            return Err(VipegError::DeltaOutOfDomain { delta: self.delta });
        }
        let k = kappa(self.delta)?;
        if !(self.alpha > 0.0 && self.alpha < k) {
            return bad(format!(
                "alpha = {} must lie in ]0, kappa(delta)[ = ]0, {k}[ for delta = {}",
                self.alpha, self.delta
            ));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return bad(format!("gamma = {} must lie in ]0, 1[", self.gamma));
        }
        if !(self.epsilon >= 0.0) {
            return bad(format!("epsilon = {} must be nonnegative", self.epsilon));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive".into());
        }
        if !(self.lambda_hat > 0.0) {
            return bad(format!("lambda_hat = {} must be positive", self.lambda_hat));
        }
        if self.n_hat == 0 || self.n_zero == 0 || self.n_hat > self.n_zero {
            return bad(format!("need 0 < n_hat <= n_zero, got n_hat = {}, n_zero = {}", self.n_hat, self.n_zero));
        }
        if !(self.zeta_min > 0.0) {
            return bad(format!("zeta_min = {} must be positive", self.zeta_min));
        }
        if !(self.mu > 1.0 && self.mu <= self.nu) {
            return bad(format!("need 1 < mu <= nu, got mu = {}, nu = {}", self.mu, self.nu));
        }
        match self.lambda0 {
            Lambda0Policy::Explicit(l) if !(l > 0.0 && l.is_finite()) => {
                bad(format!("explicit lambda0 = {l} must be positive"))
            }
            Lambda0Policy::Perturbation { scale: Some(s) } if !(s > 0.0 && s.is_finite()) => {
                bad(format!("perturbation scale = {s} must be positive"))
            }
            _ => Ok(()),
        }
    }

    /// Seeded generator for the `λ₀` perturbation.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.rng_seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_settings_are_valid() {
        for (d, a) in [(0.73, 0.41), (1.01, 0.41), (1.0, 0.41), (0.73, 0.49)] {
            SolverConfig::new(d, a).unwrap();
        }
    }

    #[test]
    fn alpha_at_or_above_kappa_is_rejected() {
        let k = kappa(1.0).unwrap();
        assert!(matches!(SolverConfig::new(1.0, k), Err(VipegError::Config(_))));
        assert!(SolverConfig::new(1.0, 0.5).is_err());
        assert!(SolverConfig::new(1.0, 0.0).is_err());
    }

    #[test]
    fn small_delta_is_rejected() {
        assert!(matches!(SolverConfig::new(0.6, 0.1), Err(VipegError::DeltaOutOfDomain { .. })));
    }

    #[test]
    fn field_constraints() {
        let base = SolverConfig::new(0.73, 0.41).unwrap();
        let mut c = base.clone();
        c.mu = 20.0;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.mu = 1.0;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.n_hat = 2000;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.gamma = 1.0;
        assert!(c.validate().is_err());
        let mut c = base;
        c.lambda0 = Lambda0Policy::Explicit(-1.0);
        assert!(c.validate().is_err());
    }
}
