//! Proximal extrapolated gradient methods for monotone variational
//! inequalities `VI(F, g)`, together with baseline solvers and test problems.

pub mod baselines;
pub mod config;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod problem;
pub mod problems;
pub mod prox;
pub mod solvers;
pub mod stepsize;
pub mod trace;

pub use config::{Lambda0Policy, SolverConfig};
pub use error::{Result, VipegError};
pub use linalg::DenseVector;
pub use problem::{CountingOracle, ProblemInstance};
pub use prox::{FeasibleSetSpec, ProxSpec};
pub use solvers::{ipeg_solve, peg_solve};
pub use stepsize::{kappa, kappa_oracle};
pub use trace::{IterateHistory, IterationRecord, RunResult, RunStatus};
