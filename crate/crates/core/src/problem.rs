//! The variational inequality `VI(F, g)`: an operator `F` plus the proximal
//! map of a convex `g`, with optional metadata used by some solvers.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::linalg::{dist, dot, DenseVector};
use crate::{Result, VipegError};

pub type OperatorFn = Box<dyn Fn(&[f64]) -> DenseVector + Send + Sync>;
pub type ProxFn = Box<dyn Fn(&[f64], f64) -> DenseVector + Send + Sync>;
pub type ScalarFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// An instance of `VI(F, g)`.
///
/// Every call to [`ProblemInstance::operator`] and [`ProblemInstance::prox`]
/// bumps an instrumented counter. Counters are atomics so an instance can be
/// shared between threads; solvers additionally keep per-run tallies through
/// [`CountingOracle`].
pub struct ProblemInstance {
    name: String,
    dim: usize,
    operator: OperatorFn,
    prox: ProxFn,
    g: Option<ScalarFn>,
    f: Option<ScalarFn>,
    lipschitz: Option<f64>,
    f_calls: AtomicU64,
    prox_calls: AtomicU64,
}

impl fmt::Debug for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemInstance")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("has_g", &self.g.is_some())
            .field("has_f", &self.f.is_some())
            .field("lipschitz", &self.lipschitz)
            .finish()
    }
}

impl ProblemInstance {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        operator: impl Fn(&[f64]) -> DenseVector + Send + Sync + 'static,
        prox: impl Fn(&[f64], f64) -> DenseVector + Send + Sync + 'static,
    ) -> Self {
        assert!(dim > 0, "problem dimension must be positive");
        Self {
            name: name.into(),
            dim,
            operator: Box::new(operator),
            prox: Box::new(prox),
            g: None,
            f: None,
            lipschitz: None,
            f_calls: AtomicU64::new(0),
            prox_calls: AtomicU64::new(0),
        }
    }

    /// Attach an evaluator of `g` (returning `+inf` outside `dom g`).
    pub fn with_g(mut self, g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.g = Some(Box::new(g));
        self
    }

    /// Attach the smooth part `f` when `F = ∇f`.
    pub fn with_f(mut self, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.f = Some(Box::new(f));
        self
    }

    pub fn with_lipschitz(mut self, l: f64) -> Self {
        assert!(l > 0.0, "Lipschitz constant must be positive");
        self.lipschitz = Some(l);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lipschitz(&self) -> Option<f64> {
        self.lipschitz
    }

    pub fn has_g(&self) -> bool {
        self.g.is_some()
    }

    pub fn has_f(&self) -> bool {
        self.f.is_some()
    }

    /// Evaluate `F(x)`.
    pub fn operator(&self, x: &[f64]) -> DenseVector {
        debug_assert_eq!(x.len(), self.dim);
        self.f_calls.fetch_add(1, Ordering::Relaxed);
        (self.operator)(x)
    }

    /// Evaluate `prox_{λg}(v)`.
    pub fn prox(&self, v: &[f64], lambda: f64) -> DenseVector {
        debug_assert_eq!(v.len(), self.dim);
        self.prox_calls.fetch_add(1, Ordering::Relaxed);
        (self.prox)(v, lambda)
    }

    pub fn g_value(&self, x: &[f64]) -> Option<f64> {
        self.g.as_ref().map(|g| g(x))
    }

    pub fn f_value(&self, x: &[f64]) -> Option<f64> {
        self.f.as_ref().map(|f| f(x))
    }

    /// Composite objective `f + g`, when both parts are known.
    pub fn objective(&self, x: &[f64]) -> Option<f64> {
        Some(self.f_value(x)? + self.g_value(x)?)
    }

    pub fn f_calls(&self) -> u64 {
        self.f_calls.load(Ordering::Relaxed)
    }

    pub fn prox_calls(&self) -> u64 {
        self.prox_calls.load(Ordering::Relaxed)
    }

    pub fn reset_counters(&self) {
        self.f_calls.store(0, Ordering::Relaxed);
        self.prox_calls.store(0, Ordering::Relaxed);
    }

    pub(crate) fn check_dim(&self, x: &[f64], what: &str) -> Result<()> {
        if x.len() != self.dim {
            return Err(VipegError::InvalidInput(format!(
                "{what} has dimension {} but problem '{}' has dimension {}",
                x.len(),
                self.name,
                self.dim
            )));
        }
        Ok(())
    }
}

/// Per-run view of a problem that tallies operator and prox calls.
#[derive(Debug)]
pub struct CountingOracle<'a> {
    problem: &'a ProblemInstance,
    f_calls: u64,
    prox_calls: u64,
}

impl<'a> CountingOracle<'a> {
    pub fn new(problem: &'a ProblemInstance) -> Self {
        Self { problem, f_calls: 0, prox_calls: 0 }
    }

    pub fn problem(&self) -> &'a ProblemInstance {
        self.problem
    }

    pub fn operator(&mut self, x: &[f64]) -> DenseVector {
        self.f_calls += 1;
        self.problem.operator(x)
    }

    pub fn prox(&mut self, v: &[f64], lambda: f64) -> DenseVector {
        self.prox_calls += 1;
        self.problem.prox(v, lambda)
    }

    /// `prox_{λg}(x − λ·d)`, the forward-backward step along direction `d`.
    pub fn forward_backward(&mut self, x: &[f64], d: &[f64], lambda: f64) -> DenseVector {
        let v: DenseVector = x.iter().zip(d).map(|(a, b)| a - lambda * b).collect();
        self.prox(&v, lambda)
    }

    pub fn f_calls(&self) -> u64 {
        self.f_calls
    }

    pub fn prox_calls(&self) -> u64 {
        self.prox_calls
    }
}

/// Sampled check of `⟨F(a) − F(b), a − b⟩ ≥ −tol` over the given pairs.
/// Returns the most negative value seen.
pub fn worst_monotonicity(problem: &ProblemInstance, pairs: &[(DenseVector, DenseVector)]) -> f64 {
    pairs
        .iter()
        .map(|(a, b)| {
            let fa = problem.operator(a);
            let fb = problem.operator(b);
            let df: DenseVector = fa.iter().zip(&fb).map(|(x, y)| x - y).collect();
            let dx: DenseVector = a.iter().zip(b).map(|(x, y)| x - y).collect();
            dot(&df, &dx)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Largest observed `‖F(a) − F(b)‖ / ‖a − b‖` over the given pairs.
pub fn max_lipschitz_ratio(problem: &ProblemInstance, pairs: &[(DenseVector, DenseVector)]) -> f64 {
    pairs
        .iter()
        .filter(|(a, b)| dist(a, b) > 0.0)
        .map(|(a, b)| dist(&problem.operator(a), &problem.operator(b)) / dist(a, b))
        .fold(0.0, f64::max)
}
