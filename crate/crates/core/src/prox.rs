//! Projections and proximal maps used by the test problems.

use crate::linalg::DenseVector;
use crate::problem::{ProxFn, ScalarFn};
use crate::{Result, VipegError};

/// Closed convex sets whose indicator serves as `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeasibleSetSpec {
    /// `R^d_+`
    NonnegOrthant,
    /// `{x ≥ 0 : Σ x_i = total}`
    ScaledSimplex { total: f64 },
    /// The whole space (`g ≡ 0`).
    Free,
}

/// The convex term `g` of a problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProxSpec {
    Indicator(FeasibleSetSpec),
    /// `g(x) = weight · ‖x‖₁`
    L1 {
        weight: f64,
    },
}

impl From<FeasibleSetSpec> for ProxSpec {
    fn from(set: FeasibleSetSpec) -> Self {
        ProxSpec::Indicator(set)
    }
}

pub fn project_nonneg(v: &[f64]) -> DenseVector {
    v.iter().map(|&x| x.max(0.0)).collect()
}

/// Euclidean projection onto `{x ≥ 0 : Σ x_i = total}`.
///
/// Sort-based water filling: find the threshold `t` with
/// `Σ max(v_i − t, 0) = total` and return `max(v_i − t, 0)`.
pub fn project_scaled_simplex(v: &[f64], total: f64) -> DenseVector {
    debug_assert!(total > 0.0);
    if v.is_empty() {
        return Vec::new();
    }
    let mut sorted = v.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));

    let mut cumsum = 0.0;
    let mut threshold = sorted[0] - total;
    for (k, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - total) / (k + 1) as f64;
        // the support is the longest prefix whose entries stay above t
        if u - t > 0.0 {
            threshold = t;
        } else {
            break;
        }
    }
    v.iter().map(|&x| (x - threshold).max(0.0)).collect()
}

/// Componentwise `sign(v_i) · max(|v_i| − tau, 0)`.
pub fn soft_threshold(v: &[f64], tau: f64) -> DenseVector {
    debug_assert!(tau >= 0.0);
    v.iter()
        .map(|&x| {
            let mag = x.abs() - tau;
            if mag > 0.0 {
                mag.copysign(x)
            } else {
                0.0
            }
        })
        .collect()
}

fn validate(spec: &ProxSpec) -> Result<()> {
    match *spec {
        ProxSpec::Indicator(FeasibleSetSpec::ScaledSimplex { total }) if !(total > 0.0 && total.is_finite()) => {
            Err(VipegError::InvalidInput(format!("simplex total must be positive and finite, got {total}")))
        }
        ProxSpec::L1 { weight } if !(weight >= 0.0 && weight.is_finite()) => {
            Err(VipegError::InvalidInput(format!("l1 weight must be nonnegative and finite, got {weight}")))
        }
        _ => Ok(()),
    }
}

/// Build the map `(v, λ) ↦ prox_{λg}(v)` for `spec`. For indicators `λ` is ignored.
pub fn prox_for(spec: impl Into<ProxSpec>) -> Result<ProxFn> {
    let spec = spec.into();
    validate(&spec)?;
    Ok(match spec {
        ProxSpec::Indicator(FeasibleSetSpec::NonnegOrthant) => Box::new(|v: &[f64], _| project_nonneg(v)),
        ProxSpec::Indicator(FeasibleSetSpec::ScaledSimplex { total }) => {
            Box::new(move |v: &[f64], _| project_scaled_simplex(v, total))
        }
        ProxSpec::Indicator(FeasibleSetSpec::Free) => Box::new(|v: &[f64], _| v.to_vec()),
        ProxSpec::L1 { weight } => Box::new(move |v: &[f64], lambda: f64| soft_threshold(v, lambda * weight)),
    })
}

/// Tolerance used to decide membership of a set when evaluating its indicator.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Build an evaluator of `g` for `spec`; indicators return `+inf` outside the set.
pub fn g_for(spec: impl Into<ProxSpec>) -> Result<ScalarFn> {
    let spec = spec.into();
    validate(&spec)?;
    Ok(match spec {
        ProxSpec::Indicator(FeasibleSetSpec::NonnegOrthant) => {
            Box::new(|x: &[f64]| if x.iter().all(|&v| v >= -FEASIBILITY_TOL) { 0.0 } else { f64::INFINITY })
        }
        ProxSpec::Indicator(FeasibleSetSpec::ScaledSimplex { total }) => Box::new(move |x: &[f64]| {
            let sum: f64 = x.iter().sum();
            let nonneg = x.iter().all(|&v| v >= -FEASIBILITY_TOL);
            if nonneg && (sum - total).abs() <= FEASIBILITY_TOL * (1.0 + total) {
                0.0
            } else {
                f64::INFINITY
            }
        }),
        ProxSpec::Indicator(FeasibleSetSpec::Free) => Box::new(|_: &[f64]| 0.0),
        ProxSpec::L1 { weight } => Box::new(move |x: &[f64]| weight * x.iter().map(|v| v.abs()).sum::<f64>()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn nonneg_clamps() {
        assert_eq!(project_nonneg(&[1.0, -2.0, 3.0]), vec![1.0, 0.0, 3.0]);
        assert_eq!(project_nonneg(&[0.5, 2.0]), vec![0.5, 2.0]);
        assert_eq!(project_nonneg(&[-1.0, -1.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(project_scaled_simplex(&[1.0, 1.0], 2.0), vec![1.0, 1.0]);
        let p = project_scaled_simplex(&[3.0, 1.0], 2.0);
        assert_abs_diff_eq!(p[0], 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 0.0, epsilon = 1e-15);
        let p = project_scaled_simplex(&[0.5; 4], 4.0);
        for v in p {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn simplex_with_ties_and_large_total() {
        let v = vec![2.0, 2.0, 2.0, -1.0];
        let p = project_scaled_simplex(&v, 3.0);
        assert_eq!(p, vec![1.0, 1.0, 1.0, 0.0]);

        let m = 100_000usize;
        let v: Vec<f64> = (0..m).map(|i| ((i * 7919) % 1000) as f64 / 10.0 - 50.0).collect();
        let p = project_scaled_simplex(&v, m as f64);
        let s: f64 = p.iter().sum();
        assert!((s - m as f64).abs() <= 1e-10 * m as f64, "sum {s}");
        assert!(p.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn soft_threshold_examples() {
        assert_eq!(soft_threshold(&[2.0, -0.5], 1.0), vec![1.0, 0.0]);
        assert_eq!(soft_threshold(&[2.0, -0.5, 0.0], 0.0), vec![2.0, -0.5, 0.0]);
        assert_eq!(soft_threshold(&[-3.0], 1.0), vec![-2.0]);
    }

    #[test]
    fn prox_for_wires_the_right_map() {
        let p = prox_for(FeasibleSetSpec::NonnegOrthant).unwrap();
        assert_eq!(p(&[-1.0, 2.0], 123.0), vec![0.0, 2.0]);

        let p = prox_for(FeasibleSetSpec::ScaledSimplex { total: 4.0 }).unwrap();
        let v = [3.0, -1.0, 0.5, 2.0];
        assert_eq!(p(&v, 0.1), project_scaled_simplex(&v, 4.0));

        let p = prox_for(ProxSpec::L1 { weight: 0.5 }).unwrap();
        assert_eq!(p(&[2.0, -0.5], 2.0), vec![1.0, 0.0]);
    }

    #[test]
    fn malformed_specs_are_rejected() {
        assert!(matches!(prox_for(FeasibleSetSpec::ScaledSimplex { total: 0.0 }), Err(VipegError::InvalidInput(_))));
        assert!(matches!(prox_for(ProxSpec::L1 { weight: -1.0 }), Err(VipegError::InvalidInput(_))));
        assert!(g_for(ProxSpec::L1 { weight: f64::NAN }).is_err());
    }

    #[test]
    fn indicator_values() {
        let g = g_for(FeasibleSetSpec::ScaledSimplex { total: 2.0 }).unwrap();
        assert_eq!(g(&[1.0, 1.0]), 0.0);
        assert_eq!(g(&[1.5, 1.0]), f64::INFINITY);
        assert_eq!(g(&[3.0, -1.0]), f64::INFINITY);
        let g = g_for(ProxSpec::L1 { weight: 2.0 }).unwrap();
        assert_eq!(g(&[1.0, -2.0]), 6.0);
    }
}
