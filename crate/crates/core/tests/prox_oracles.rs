use proptest::prelude::*;
use vipeg_core::linalg::{dist, dot};
use vipeg_core::prox::{g_for, project_scaled_simplex, prox_for, ProxSpec};
use vipeg_core::FeasibleSetSpec;

/// Projection onto `{x ≥ 0, Σx = total}` by enumerating every support set:
/// on support `S` the candidate is `v_S − t` with `t = (Σ_S v − total)/|S|`.
fn brute_force_simplex(v: &[f64], total: f64) -> Vec<f64> {
    let d = v.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 1u32..(1 << d) {
        let support: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        let t = (support.iter().map(|&i| v[i]).sum::<f64>() - total) / support.len() as f64;
        let mut x = vec![0.0; d];
        let mut feasible = true;
        for &i in &support {
            x[i] = v[i] - t;
            if x[i] < 0.0 {
                feasible = false;
            }
        }
        if feasible {
            let dd = dist(&x, v);
            if best.as_ref().is_none_or(|(b, _)| dd < *b) {
                best = Some((dd, x));
            }
        }
    }
    best.unwrap().1
}

fn specs() -> Vec<ProxSpec> {
    vec![
        FeasibleSetSpec::NonnegOrthant.into(),
        FeasibleSetSpec::ScaledSimplex { total: 1.0 }.into(),
        FeasibleSetSpec::ScaledSimplex { total: 4.0 }.into(),
        FeasibleSetSpec::Free.into(),
        ProxSpec::L1 { weight: 0.3 },
        ProxSpec::L1 { weight: 2.0 },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn simplex_projection_matches_enumeration(
        v in prop::collection::vec(-10.0f64..10.0, 1..=6),
        total in 0.1f64..10.0,
    ) {
        let fast = project_scaled_simplex(&v, total);
        let slow = brute_force_simplex(&v, total);
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    // p = prox_{λg}(x) iff ⟨p − x, y − p⟩ ≥ λ(g(p) − g(y)) for all y ∈ dom g
    #[test]
    fn prox_variational_characterization(
        x in prop::collection::vec(-5.0f64..5.0, 5),
        ys in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 5), 10),
        lambda in 0.01f64..5.0,
    ) {
        for spec in specs() {
            let prox = prox_for(spec).unwrap();
            let g = g_for(spec).unwrap();
            let p = prox(&x, lambda);
            for raw in &ys {
                // map samples into dom g
                let y = match spec {
                    ProxSpec::Indicator(FeasibleSetSpec::ScaledSimplex { total }) => project_scaled_simplex(raw, total),
                    ProxSpec::Indicator(FeasibleSetSpec::NonnegOrthant) => raw.iter().map(|v| v.abs()).collect(),
                    _ => raw.clone(),
                };
                let pmx: Vec<f64> = p.iter().zip(&x).map(|(a, b)| a - b).collect();
                let ymp: Vec<f64> = y.iter().zip(&p).map(|(a, b)| a - b).collect();
                let lhs = dot(&pmx, &ymp);
                let rhs = lambda * (g(&p) - g(&y));
                prop_assert!(lhs >= rhs - 1e-9, "{:?}: {} < {}", spec, lhs, rhs);
            }
        }
    }
}
