use crate::linalg::DenseVector;
use crate::prox::{g_for, prox_for, FeasibleSetSpec};
use crate::{ProblemInstance, Result, VipegError};

/// Sun's operator `F = G + Ex + c` in O(d):
/// `G_i = x_{i−1}² + x_i² + x_{i−1}x_i + x_i x_{i+1}` with `x_0 = x_{d+1} = 0`,
/// `E` tridiagonal with diagonal 4, subdiagonal 1, superdiagonal −2, `c = −1`.
pub fn sun_operator(x: &[f64]) -> DenseVector {
    let d = x.len();
    (0..d)
        .map(|i| {
            let xi = x[i];
            let prev = if i > 0 { x[i - 1] } else { 0.0 };
            let next = if i + 1 < d { x[i + 1] } else { 0.0 };
            let g = prev * prev + xi * xi + prev * xi + xi * next;
            let h = prev + 4.0 * xi - 2.0 * next;
            g + h - 1.0
        })
        .collect()
}

/// Sun's problem over `R^d_+` or a scaled simplex.
pub fn make_sun_problem(d: usize, set: FeasibleSetSpec) -> Result<ProblemInstance> {
    if d < 2 {
        return Err(VipegError::InvalidInput(format!("Sun's problem needs d >= 2, got {d}")));
    }
    if set == FeasibleSetSpec::Free {
        return Err(VipegError::InvalidInput("Sun's problem is posed on a constrained set".into()));
    }
    let prox = prox_for(set)?;
    Ok(ProblemInstance::new(format!("sun-{d}"), d, sun_operator, move |v: &[f64], l| prox(v, l)).with_g(g_for(set)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::worst_monotonicity;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense_reference(x: &[f64]) -> Vec<f64> {
        let d = x.len();
        let mut e = vec![vec![0.0; d]; d];
        for i in 0..d {
            e[i][i] = 4.0;
            if i > 0 {
                e[i][i - 1] = 1.0;
            }
            if i + 1 < d {
                e[i][i + 1] = -2.0;
            }
        }
        let mut padded = vec![0.0];
        padded.extend_from_slice(x);
        padded.push(0.0);
        (1..=d)
            .map(|i| {
                let g =
                    padded[i - 1].powi(2) + padded[i].powi(2) + padded[i - 1] * padded[i] + padded[i] * padded[i + 1];
                let ex: f64 = (0..d).map(|j| e[i - 1][j] * x[j]).sum();
                g + ex - 1.0
            })
            .collect()
    }

    #[test]
    fn hand_evaluated_example() {
        assert_eq!(sun_operator(&[1.0, 1.0, 1.0]), vec![3.0, 6.0, 7.0]);
        assert_eq!(sun_operator(&[0.0; 5]), vec![-1.0; 5]);
    }

    #[test]
    fn rejects_small_dimension() {
        assert!(make_sun_problem(1, FeasibleSetSpec::NonnegOrthant).is_err());
        assert!(make_sun_problem(2, FeasibleSetSpec::NonnegOrthant).is_ok());
    }

    #[test]
    fn sampled_monotonicity_on_box() {
        let d = 8;
        let p = make_sun_problem(d, FeasibleSetSpec::NonnegOrthant).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pairs: Vec<_> = (0..100)
            .map(|_| {
                let x: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..10.0)).collect();
                let y: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..10.0)).collect();
                (x, y)
            })
            .collect();
        assert!(worst_monotonicity(&p, &pairs) >= 0.0);
    }

    proptest! {
        #[test]
        fn fast_path_matches_dense(x in prop::collection::vec(-10.0f64..10.0, 2..=20)) {
            let fast = sun_operator(&x);
            let slow = dense_reference(&x);
            for (a, b) in fast.iter().zip(&slow) {
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
            }
        }
    }
}
