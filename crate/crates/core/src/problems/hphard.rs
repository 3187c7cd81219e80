use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{spectral_norm, DenseMatrix};
use crate::linalg::DenseVector;
use crate::prox::{g_for, prox_for, FeasibleSetSpec};
use crate::{ProblemInstance, Result, VipegError};

/// Data of an HpHard instance `F(x) = Mx + q`.
#[derive(Debug, Clone, PartialEq)]
pub struct HpHardData {
    pub m: DenseMatrix,
    pub q: DenseVector,
}

/// Draw `M = NNᵀ + S + D` and `q` from a ChaCha8 stream seeded with `seed`.
///
/// `N` is uniform on `(−5, 5)`; the strict upper triangle of `S` is uniform on
/// `(−5, 5)` and the lower triangle is its negated transpose; `D` is diagonal,
/// uniform on `(0, 0.3)`; `q` is uniform on `(−500, 0)`. Draw order: `N`
/// row-major, `S` upper triangle row-major, `D`, `q`.
pub fn hphard_data(m: usize, seed: u64) -> Result<HpHardData> {
    if m < 2 {
        return Err(VipegError::InvalidInput(format!("HpHard needs m >= 2, got {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: Vec<f64> = (0..m * m).map(|_| rng.gen_range(-5.0..5.0)).collect();
    let mut mat = DenseMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v: f64 = (0..m).map(|k| n[i * m + k] * n[j * m + k]).sum();
            mat.set(i, j, v);
            mat.set(j, i, v);
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let s: f64 = rng.gen_range(-5.0..5.0);
            mat.set(i, j, mat.get(i, j) + s);
            mat.set(j, i, mat.get(j, i) - s);
        }
    }
    for i in 0..m {
        let d: f64 = rng.gen_range(0.0..0.3);
        mat.set(i, i, mat.get(i, i) + d);
    }
    let q = (0..m).map(|_| rng.gen_range(-500.0..0.0)).collect();
    Ok(HpHardData { m: mat, q })
}

/// HpHard on `{x ≥ 0 : Σ x_i = m}` with `L = ‖M‖₂` from power iteration.
pub fn make_hphard(m: usize, seed: u64) -> Result<ProblemInstance> {
    let data = hphard_data(m, seed)?;
    Ok(hphard_instance(data, format!("hphard-{m}-s{seed}")))
}

pub fn hphard_instance(data: HpHardData, name: String) -> ProblemInstance {
    let dim = data.q.len();
    let lip = spectral_norm(&data.m);
    let set = FeasibleSetSpec::ScaledSimplex { total: dim as f64 };
    let prox = prox_for(set).expect("valid simplex");
    let HpHardData { m, q } = data;
    ProblemInstance::new(
        name,
        dim,
        move |x: &[f64]| {
            let mut out = m.matvec(x);
            out.iter_mut().zip(&q).for_each(|(o, b)| *o += b);
            out
        },
        move |v: &[f64], l| prox(v, l),
    )
    .with_g(g_for(set).expect("valid simplex"))
    .with_lipschitz(lip)
}
