//! Comparison methods: Tseng's forward-backward-forward splitting with
//! linesearch, MPG, FISTA with backtracking and the fixed-step extragradient
//! method of Korpelevich.

mod fista;
mod korpelevich;
mod tfbf;

pub use fista::fista_solve;
pub use korpelevich::korpelevich_solve;
pub use tfbf::{tfbf_solve, TFBF_GROWTH};

use rand::Rng;

use crate::config::{Lambda0Policy, SolverConfig};
use crate::trace::RunResult;
use crate::{ProblemInstance, Result, VipegError};

/// Hard cap on linesearch trials for TFBF and FISTA.
pub const MAX_LINESEARCH_TRIALS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineConfig {
    /// linesearch shrink factor (TFBF, FISTA)
    pub beta: f64,
    /// TFBF acceptance fraction
    pub theta: f64,
    pub alpha_mpg: f64,
    pub delta_mpg: f64,
    /// Korpelevich step; `None` means `0.9 / L`
    pub lambda_fixed: Option<f64>,
    /// initial trial step of TFBF and FISTA
    pub lambda0: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    pub track_objective: bool,
}

impl Default for BaselineConfig {
    /// `β = 0.7`, `θ = 0.99`, MPG with `α = 0.41`, `δ = 1.01`, `λ₀ = 1`, `ε = 1e-6`.
    fn default() -> Self {
        Self {
            beta: 0.7,
            theta: 0.99,
            alpha_mpg: 0.41,
            delta_mpg: 1.01,
            lambda_fixed: None,
            lambda0: 1.0,
            epsilon: 1e-6,
            max_iter: 100_000,
            track_objective: false,
        }
    }
}

impl BaselineConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(VipegError::Config(m));
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return bad(format!("beta = {} must lie in ]0, 1[", self.beta));
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return bad(format!("theta = {} must lie in ]0, 1[", self.theta));
        }
        if !(self.lambda0 > 0.0 && self.lambda0.is_finite()) {
            return bad(format!("lambda0 = {} must be positive", self.lambda0));
        }
        if let Some(l) = self.lambda_fixed {
            if !(l > 0.0 && l.is_finite()) {
                return bad(format!("lambda_fixed = {l} must be positive"));
            }
        }
        if !(self.epsilon >= 0.0) {
            return bad(format!("epsilon = {} must be nonnegative", self.epsilon));
        }
        if self.max_iter == 0 {
            return bad("max_iter must be positive".into());
        }
        Ok(())
    }
}

/// MPG: the PEG iteration with `δ = delta_mpg > 1`, `α = alpha_mpg`, no correction.
pub fn mpg_solve<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &BaselineConfig,
    x0: &[f64],
    rng: &mut R,
) -> Result<RunResult> {
    config.validate()?;
    let mut cfg = SolverConfig::new(config.delta_mpg, config.alpha_mpg)?;
    cfg.epsilon = config.epsilon;
    cfg.max_iter = config.max_iter;
    cfg.correction = false;
    cfg.track_objective = config.track_objective;
    cfg.lambda0 = Lambda0Policy::Perturbation { scale: None };
    crate::solvers::run_named(problem, &cfg, x0, rng, "MPG")
}
