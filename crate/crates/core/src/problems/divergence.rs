use crate::{Result, VipegError};

/// Verdict of [`divergence_example`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Converges,
    Diverges,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceOutcome {
    /// `x_0, x_1, …` up to the step that triggered the verdict
    pub trace: Vec<f64>,
    pub classification: Classification,
    /// magnitudes of the characteristic roots, largest first
    pub root_magnitudes: [f64; 2],
}

/// Step-size threshold `2 / (2δ + 1)` above which the scalar example cannot converge.
pub fn divergence_threshold(delta: f64) -> f64 {
    2.0 / (2.0 * delta + 1.0)
}

/// Roots of `t² − (1 − λ − δλ)t − δλ = 0`, the characteristic polynomial of
/// the recursion. Their sum is `1 − λ − δλ` and their product is `−δλ`.
pub fn characteristic_roots(delta: f64, lambda: f64) -> [f64; 2] {
    let b = 1.0 - lambda - delta * lambda;
    let c = delta * lambda;
    let disc = (b * b + 4.0 * c).sqrt();
    // the larger-magnitude root first, the other from the product to avoid cancellation
    let big = if b >= 0.0 { 0.5 * (b + disc) } else { 0.5 * (b - disc) };
    let small = if big != 0.0 { -c / big } else { 0.0 };
    [big, small]
}

/// Run PEG with a fixed step on `min x²/2` (so `F(x) = x`, `g = 0`):
/// `x_{n+1} = (1 − λ − δλ)x_n + δλx_{n−1}` with `x_{−1} = x_0`.
///
/// Classified `Diverges` once `|x_n| > 10⁶|x_0|`, `Converges` once
/// `|x_n| < 10⁻⁸|x_0|`, and `Inconclusive` if neither happens within `steps`.
pub fn divergence_example(delta: f64, lambda: f64, x0: f64, steps: usize) -> Result<DivergenceOutcome> {
    if !(delta > 0.0 && delta.is_finite()) || !(lambda > 0.0 && lambda.is_finite()) {
        return Err(VipegError::InvalidInput(format!("delta = {delta} and lambda = {lambda} must be positive")));
    }
    if steps < 10 {
        return Err(VipegError::InvalidInput(format!("steps = {steps} must be at least 10")));
    }
    if x0 == 0.0 || !x0.is_finite() {
        return Err(VipegError::InvalidInput("x0 must be finite and nonzero".into()));
    }
    let a = 1.0 - lambda - delta * lambda;
    let c = delta * lambda;
    let mut trace = vec![x0];
    let (mut prev, mut cur) = (x0, x0);
    let mut classification = Classification::Inconclusive;
    for _ in 0..steps {
        let next = a * cur + c * prev;
        trace.push(next);
        prev = cur;
        cur = next;
        if cur.abs() > 1e6 * x0.abs() {
            classification = Classification::Diverges;
            break;
        }
        if cur.abs() < 1e-8 * x0.abs() {
            classification = Classification::Converges;
            break;
        }
    }
    let [r1, r2] = characteristic_roots(delta, lambda);
    Ok(DivergenceOutcome { trace, classification, root_magnitudes: [r1.abs(), r2.abs()] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_delta_examples() {
        let out = divergence_example(1.0, 0.9, 1.0, 1000).unwrap();
        assert_eq!(out.classification, Classification::Diverges);
        assert!((out.root_magnitudes[0] - 1.4296).abs() < 1e-3);

        let out = divergence_example(1.0, 0.5, 1.0, 1000).unwrap();
        assert_eq!(out.classification, Classification::Converges);
        assert!((out.root_magnitudes[0] - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((out.root_magnitudes[1] - 0.5f64.sqrt()).abs() < 1e-12);

        let out = divergence_example(1.0, 2.0 / 3.0, 1.0, 1000).unwrap();
        assert_eq!(out.classification, Classification::Inconclusive);
        assert!((out.root_magnitudes[0] - 1.0).abs() < 1e-12);
        assert!((out.root_magnitudes[1] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn trace_follows_the_recursion() {
        let out = divergence_example(1.0, 0.5, 2.0, 10).unwrap();
        // x1 = (1 − λ)x0 since x_{−1} = x0; x2 = 0·x1 + 0.5·x0
        assert_eq!(&out.trace[..3], &[2.0, 1.0, 1.0]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(divergence_example(1.0, 0.5, 0.0, 100).is_err());
        assert!(divergence_example(1.0, 0.5, 1.0, 5).is_err());
        assert!(divergence_example(-1.0, 0.5, 1.0, 100).is_err());
        assert!(divergence_example(1.0, 0.0, 1.0, 100).is_err());
    }

    proptest! {
        #[test]
        fn classification_matches_threshold_side(
            delta in prop::sample::select(vec![0.5, 0.73, 1.0, 2.0]),
            offset in 0.02f64..0.5,
            above in any::<bool>(),
        ) {
            let t = divergence_threshold(delta);
            let lambda = if above { t + offset } else { t - offset.min(t - 0.02) };
            prop_assume!(lambda > 0.0 && (lambda - t).abs() >= 0.02);
            let out = divergence_example(delta, lambda, 1.0, 100_000).unwrap();
            let expected = if above { Classification::Diverges } else { Classification::Converges };
            prop_assert_eq!(out.classification, expected);
            // Vieta: product −δλ, sum 1 − λ − δλ
            let [r1, r2] = characteristic_roots(delta, lambda);
            prop_assert!((r1 * r2 + delta * lambda).abs() < 1e-12);
            prop_assert!((r1 + r2 - (1.0 - lambda - delta * lambda)).abs() < 1e-12);
        }
    }
}
