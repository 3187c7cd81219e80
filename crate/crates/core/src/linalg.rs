//! Small dense vector helpers. Vectors are plain `Vec<f64>` / `&[f64]`.

/// A point of the finite-dimensional space the problems live in.
pub type DenseVector = Vec<f64>;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Euclidean distance ‖a − b‖.
#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> DenseVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> DenseVector {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

/// `x + delta * (x - x_prev)`
pub fn extrapolate(x: &[f64], x_prev: &[f64], delta: f64) -> DenseVector {
    x.iter().zip(x_prev).map(|(a, b)| a + delta * (a - b)).collect()
}

pub fn all_finite(a: &[f64]) -> bool {
    a.iter().all(|v| v.is_finite())
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}
