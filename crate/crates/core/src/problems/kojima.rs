use crate::linalg::DenseVector;
use crate::prox::{g_for, prox_for, FeasibleSetSpec};
use crate::ProblemInstance;

/// The Kojima–Shindo polynomial map on `R⁴`.
pub fn kojima_shindo_operator(x: &[f64]) -> DenseVector {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    vec![
        3.0 * x1 * x1 + 2.0 * x1 * x2 + 2.0 * x2 * x2 + x3 + 3.0 * x4 - 6.0,
        2.0 * x1 * x1 + x1 + x2 * x2 + 10.0 * x3 + 2.0 * x4 - 2.0,
        3.0 * x1 * x1 + x1 * x2 + 2.0 * x2 * x2 + 2.0 * x3 + 9.0 * x4 - 9.0,
        x1 * x1 + 3.0 * x2 * x2 + 2.0 * x3 + 3.0 * x4 - 3.0,
    ]
}

/// Kojima–Shindo NCP restricted to `{x ≥ 0 : Σ x_i = 4}`.
pub fn make_kojima_shindo() -> ProblemInstance {
    let set = FeasibleSetSpec::ScaledSimplex { total: 4.0 };
    let prox = prox_for(set).expect("valid simplex");
    ProblemInstance::new("kojima-shindo", 4, kojima_shindo_operator, move |v: &[f64], l| prox(v, l))
        .with_g(g_for(set).expect("valid simplex"))
}
