//! Declarative experiment description, read from TOML.
//!
//! ```toml
//! [global]
//! epsilon = 1e-6
//! max_iter = 100000
//! repetitions = 1
//! seed = 0
//! timing = true
//! out_dir = "results"
//!
//! [[problem]]
//! kind = "kojima-shindo"
//! x0 = [1.0, 1.0, 1.0, 1.0]
//!
//! [[solver]]
//! kind = "ipeg"
//! delta = 0.73
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default)]
    pub global: GlobalSpec,
    #[serde(default, rename = "problem")]
    pub problems: Vec<ProblemSpec>,
    #[serde(default, rename = "solver")]
    pub solvers: Vec<SolverSpec>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GlobalSpec {
    pub epsilon: f64,
    pub max_iter: usize,
    pub repetitions: usize,
    /// seeds the λ₀ perturbation of every cell; repetitions reuse it
    pub seed: u64,
    /// when false, elapsed and wall times are written as 0 so outputs are byte-stable
    pub timing: bool,
    pub out_dir: Option<PathBuf>,
}

impl Default for GlobalSpec {
    fn default() -> Self {
        Self { epsilon: 1e-6, max_iter: 100_000, repetitions: 1, seed: 0, timing: true, out_dir: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Sun,
    KojimaShindo,
    Hphard,
    Logreg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Orthant,
    Simplex,
}

/// Starting point: an explicit vector, `"zeros"`, `"ones"` or `"uniform(a, b)"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum X0Spec {
    Values(Vec<f64>),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticSpec {
    pub samples: usize,
    pub features: usize,
    #[serde(default = "default_density")]
    pub density: f64,
}

fn default_density() -> f64 {
    0.2
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub id: Option<String>,
    /// Sun's problem dimension
    pub d: Option<usize>,
    /// Sun's problem feasible set
    pub set: Option<SetKind>,
    /// HpHard dimension
    pub m: Option<usize>,
    /// instance seed (HpHard data, synthetic data, random starting points)
    pub seed: Option<u64>,
    /// svmlight-style data file, relative to the spec file
    pub fixture: Option<PathBuf>,
    pub synthetic: Option<SyntheticSpec>,
    pub mu_factor: Option<f64>,
    pub x0: Option<X0Spec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Peg,
    Ipeg,
    Mpg,
    Tfbf,
    Fista,
    Korpelevich,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub kind: Option<SolverKind>,
    pub id: Option<String>,
    pub delta: Option<f64>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    pub lambda_hat: Option<f64>,
    pub n_hat: Option<usize>,
    pub n_zero: Option<usize>,
    pub zeta_min: Option<f64>,
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub correction: Option<bool>,
    /// explicit initial step; otherwise bootstrapped from a perturbation
    pub lambda0: Option<f64>,
    pub perturb_scale: Option<f64>,
    pub epsilon: Option<f64>,
    pub max_iter: Option<usize>,
    pub beta: Option<f64>,
    pub theta: Option<f64>,
    pub lambda_fixed: Option<f64>,
    pub track_objective: Option<bool>,
}

impl ExperimentSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        spec.check()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            HarnessError::Config(msg) => HarnessError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Structural checks that need no problem data.
    pub fn check(&self) -> Result<()> {
        if self.problems.is_empty() {
            return Err(HarnessError::Config("at least one [[problem]] is required".into()));
        }
        if self.solvers.is_empty() {
            return Err(HarnessError::Config("at least one [[solver]] is required".into()));
        }
        if self.global.repetitions == 0 {
            return Err(HarnessError::Config("repetitions must be at least 1".into()));
        }
        if self.solvers.iter().any(|s| s.kind.is_none()) {
            return Err(HarnessError::Config("every [[solver]] needs a kind".into()));
        }
        Ok(())
    }

    /// Apply `VIPEG_SEED` when set.
    pub fn apply_env_overrides(&mut self) -> Result<()> {
        if let Ok(v) = std::env::var("VIPEG_SEED") {
            self.global.seed = v
                .trim()
                .parse()
                .map_err(|_| HarnessError::Config(format!("VIPEG_SEED = '{v}' is not an unsigned integer")))?;
        }
        Ok(())
    }
}
