use std::fmt;

use crate::linalg::DenseVector;

/// One accepted iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub n: usize,
    pub residual: f64,
    pub lambda: f64,
    pub backtracks: usize,
    pub f_calls_cum: u64,
    pub prox_calls_cum: u64,
    /// seconds since the solver started
    pub elapsed: f64,
    /// `f + g` at the new iterate, when tracked
    pub objective: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RunStatus {
    Converged,
    MaxIterReached,
    StationaryStop,
    Diverged,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunStatus::Converged => "Converged",
            RunStatus::MaxIterReached => "MaxIterReached",
            RunStatus::StationaryStop => "StationaryStop",
            RunStatus::Diverged => "Diverged",
        }
    }

    /// Converged or stopped exactly at a solution.
    pub fn is_success(&self) -> bool {
        matches!(self, RunStatus::Converged | RunStatus::StationaryStop)
    }
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RunStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Converged" => Ok(RunStatus::Converged),
            "MaxIterReached" => Ok(RunStatus::MaxIterReached),
            "StationaryStop" => Ok(RunStatus::StationaryStop),
            "Diverged" => Ok(RunStatus::Diverged),
            other => Err(format!("unknown run status '{other}'")),
        }
    }
}

/// Full iterate history, index `k` holding `x_k`, `y_k`, `λ_k`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IterateHistory {
    pub xs: Vec<DenseVector>,
    pub ys: Vec<DenseVector>,
    pub lambdas: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub solver_name: String,
    pub status: RunStatus,
    pub final_x: DenseVector,
    /// The stopping measure at termination (last record's residual for PEG-type methods).
    pub final_residual: f64,
    pub trace: Vec<IterationRecord>,
    pub f_calls: u64,
    pub prox_calls: u64,
    pub history: Option<IterateHistory>,
    /// wall-clock seconds for the whole run
    pub wall_time: f64,
}

impl RunResult {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }

    pub fn total_backtracks(&self) -> usize {
        self.trace.iter().map(|r| r.backtracks).sum()
    }

    pub fn lambdas(&self) -> impl Iterator<Item = f64> + '_ {
        self.trace.iter().map(|r| r.lambda)
    }
}
