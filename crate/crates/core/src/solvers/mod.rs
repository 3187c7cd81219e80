//! Proximal extrapolated gradient methods with prediction–correction steps.
//!
//! Both solvers iterate
//!
//! ```text
//! y_n     = x_n + δ(x_n − x_{n−1})
//! λ_n     = predicted from α‖y_n − y_{n−1}‖ / ‖F(y_n) − F(y_{n−1})‖
//! x_{n+1} = prox_{λ_n g}(x_n − λ_n F(y_n))
//! ```
//!
//! and stop when `‖x_{n+1} − y_n‖ + ‖x_n − y_n‖ < ε`. Each accepted iteration
//! costs one operator evaluation; `F(y_{n−1})` is carried over.

mod correction;
mod ergodic;
mod peg;

pub use correction::{correction_step, CorrectionOutcome, MAX_CORRECTION_BACKTRACKS};
pub use ergodic::ergodic_iterate;
pub use peg::{DIVERGENCE_FACTOR, STATIONARY_TOL};

use rand::Rng;

use crate::config::SolverConfig;
use crate::trace::RunResult;
use crate::{ProblemInstance, Result};
use peg::Variant;

/// PEG: nonincreasing steps `λ_n = min{λ_{n−1}, α‖Δy‖/‖ΔF‖}`; the correction
/// step runs only when `δ < 1`.
pub fn peg_solve<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &SolverConfig,
    x0: &[f64],
    rng: &mut R,
) -> Result<RunResult> {
    peg::run(problem, config, x0, rng, Variant::Monotone, "PEG")
}

/// IPEG: steps may grow by `φ_{n−1}` up to `λ̂` while `n < n₀`; the
/// correction step runs for every admissible `δ`.
pub fn ipeg_solve<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &SolverConfig,
    x0: &[f64],
    rng: &mut R,
) -> Result<RunResult> {
    peg::run(problem, config, x0, rng, Variant::Nonmonotone, "IPEG")
}

pub(crate) fn run_named<R: Rng + ?Sized>(
    problem: &ProblemInstance,
    config: &SolverConfig,
    x0: &[f64],
    rng: &mut R,
    name: &str,
) -> Result<RunResult> {
    peg::run(problem, config, x0, rng, Variant::Monotone, name)
}
