//! Expands an [`ExperimentSpec`] into (problem, solver, repetition) cells and runs them.

use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use vipeg_core::baselines::{fista_solve, korpelevich_solve, mpg_solve, tfbf_solve, BaselineConfig};
use vipeg_core::problems::{
    hphard_data, hphard_instance, make_kojima_shindo, make_logreg, make_sun_problem, parse_sparse_dataset_str,
    synthetic_dataset, DatasetFixture, HpHardData,
};
use vipeg_core::{ipeg_solve, peg_solve, FeasibleSetSpec, Lambda0Policy, ProblemInstance, RunResult, SolverConfig};

use crate::error::{HarnessError, Result};
use crate::output::{trace_file_name, write_trace_csv, SummaryRow};
use crate::spec::{ExperimentSpec, ProblemKind, ProblemSpec, SetKind, SolverKind, SolverSpec, X0Spec};

/// Where and how to run.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// overrides `global.out_dir`; no files are written when both are absent
    pub out_dir: Option<PathBuf>,
    /// worker threads; `None` lets rayon decide
    pub jobs: Option<usize>,
    /// directory against which relative fixture paths are resolved
    pub base_dir: PathBuf,
}

/// One executed cell.
#[derive(Debug, Clone)]
pub struct CellResult {
    pub problem_id: String,
    pub solver_id: String,
    pub repetition: usize,
    pub result: RunResult,
    /// counters read from the problem instance after the run
    pub instance_f_calls: u64,
    pub instance_prox_calls: u64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub rows: Vec<SummaryRow>,
    pub cells: Vec<CellResult>,
}

impl ExperimentOutcome {
    pub fn all_converged(&self) -> bool {
        self.cells.iter().all(|c| c.result.status.is_success())
    }
}

#[derive(Debug, Clone)]
enum ProblemData {
    Sun { d: usize, set: FeasibleSetSpec },
    KojimaShindo,
    HpHard(HpHardData),
    LogReg { data: DatasetFixture, mu_factor: f64 },
}

#[derive(Debug, Clone)]
struct ProblemPlan {
    id: String,
    data: ProblemData,
    x0: Vec<f64>,
}

impl ProblemPlan {
    fn instantiate(&self) -> Result<ProblemInstance> {
        Ok(match &self.data {
            ProblemData::Sun { d, set } => make_sun_problem(*d, *set)?,
            ProblemData::KojimaShindo => make_kojima_shindo(),
            ProblemData::HpHard(data) => hphard_instance(data.clone(), self.id.clone()),
            ProblemData::LogReg { data, mu_factor } => make_logreg(data, *mu_factor)?,
        })
    }
}

#[derive(Debug, Clone)]
enum SolverPlan {
    Peg(SolverConfig),
    Ipeg(SolverConfig),
    Mpg(BaselineConfig),
    Tfbf(BaselineConfig),
    Fista(BaselineConfig),
    Korpelevich(BaselineConfig),
}

fn solver_default_id(s: &SolverSpec, kind: SolverKind) -> String {
    let delta = |d: f64| format!("{d}");
    match kind {
        SolverKind::Peg => format!("PEG({})", delta(s.delta.unwrap_or(1.0))),
        SolverKind::Ipeg => format!("IPEG({})", delta(s.delta.unwrap_or(0.73))),
        SolverKind::Mpg => "MPG".into(),
        SolverKind::Tfbf => "TFBF".into(),
        SolverKind::Fista => "FISTA".into(),
        SolverKind::Korpelevich => "Korpelevich".into(),
    }
}

fn plan_solver(s: &SolverSpec, spec: &ExperimentSpec) -> Result<(String, SolverPlan)> {
    let kind = s.kind.ok_or_else(|| HarnessError::Config("solver without kind".into()))?;
    let id = s.id.clone().unwrap_or_else(|| solver_default_id(s, kind));
    let ctx = |e: vipeg_core::VipegError| HarnessError::Config(format!("solver '{id}': {e}"));
    let epsilon = s.epsilon.unwrap_or(spec.global.epsilon);
    let max_iter = s.max_iter.unwrap_or(spec.global.max_iter);
    let track_objective = s.track_objective.unwrap_or(false);

    let plan = match kind {
        SolverKind::Peg | SolverKind::Ipeg => {
            let default_delta = if kind == SolverKind::Peg { 1.0 } else { 0.73 };
            let mut c = SolverConfig::new(s.delta.unwrap_or(default_delta), s.alpha.unwrap_or(0.41)).map_err(ctx)?;
            c.epsilon = epsilon;
            c.max_iter = max_iter;
            c.track_objective = track_objective;
            c.rng_seed = spec.global.seed;
            if let Some(v) = s.gamma {
                c.gamma = v;
            }
            if let Some(v) = s.lambda_hat {
                c.lambda_hat = v;
            }
            if let Some(v) = s.n_hat {
                c.n_hat = v;
            }
            if let Some(v) = s.n_zero {
                c.n_zero = v;
            }
            if let Some(v) = s.zeta_min {
                c.zeta_min = v;
            }
            if let Some(v) = s.mu {
                c.mu = v;
            }
            if let Some(v) = s.nu {
                c.nu = v;
            }
            if let Some(v) = s.correction {
                c.correction = v;
            }
            c.lambda0 = match (s.lambda0, s.perturb_scale) {
                (Some(l), _) => Lambda0Policy::Explicit(l),
                (None, scale) => Lambda0Policy::Perturbation { scale },
            };
            c.validate().map_err(ctx)?;
            if kind == SolverKind::Peg {
                SolverPlan::Peg(c)
            } else {
                SolverPlan::Ipeg(c)
            }
        }
        _ => {
            let mut b = BaselineConfig { epsilon, max_iter, track_objective, ..Default::default() };
            if let Some(v) = s.beta {
                b.beta = v;
            }
            if let Some(v) = s.theta {
                b.theta = v;
            }
            if let Some(v) = s.lambda_fixed {
                b.lambda_fixed = Some(v);
            }
            if let Some(v) = s.lambda0 {
                b.lambda0 = v;
            }
            if let Some(v) = s.delta {
                b.delta_mpg = v;
            }
            if let Some(v) = s.alpha {
                b.alpha_mpg = v;
            }
            b.validate().map_err(ctx)?;
            match kind {
                SolverKind::Mpg => {
                    SolverConfig::new(b.delta_mpg, b.alpha_mpg).map_err(ctx)?;
                    SolverPlan::Mpg(b)
                }
                SolverKind::Tfbf => SolverPlan::Tfbf(b),
                SolverKind::Fista => SolverPlan::Fista(b),
                _ => SolverPlan::Korpelevich(b),
            }
        }
    };
    Ok((id, plan))
}

fn parse_uniform(name: &str) -> Option<(f64, f64)> {
    let inner = name.trim().strip_prefix("uniform(")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a < b).then_some((a, b))
}

fn build_x0(spec: Option<&X0Spec>, default: &X0Spec, dim: usize, seed: u64, id: &str) -> Result<Vec<f64>> {
    let x0 = match spec.unwrap_or(default) {
        X0Spec::Values(v) => v.clone(),
        X0Spec::Named(name) => match name.as_str() {
            "zeros" => vec![0.0; dim],
            "ones" => vec![1.0; dim],
            other => {
                let (a, b) = parse_uniform(other).ok_or_else(|| {
                    HarnessError::Config(format!(
                        "problem '{id}': x0 must be a vector, \"zeros\", \"ones\" or \"uniform(a, b)\", got '{other}'"
                    ))
                })?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(1);
                (0..dim).map(|_| rng.gen_range(a..b)).collect()
            }
        },
    };
    if x0.len() != dim {
        return Err(HarnessError::Config(format!("problem '{id}': x0 has length {}, expected {dim}", x0.len())));
    }
    Ok(x0)
}

fn plan_problem(p: &ProblemSpec, spec: &ExperimentSpec, base_dir: &Path) -> Result<ProblemPlan> {
    let seed = p.seed.unwrap_or(spec.global.seed);
    let named = |s: &str| X0Spec::Named(s.into());
    let (default_id, data, dim, default_x0) = match p.kind {
        ProblemKind::Sun => {
            let d = p.d.ok_or_else(|| HarnessError::Config("sun problem needs d".into()))?;
            let (set, tag) = match p.set.unwrap_or(SetKind::Orthant) {
                SetKind::Orthant => (FeasibleSetSpec::NonnegOrthant, "orthant"),
                SetKind::Simplex => (FeasibleSetSpec::ScaledSimplex { total: d as f64 }, "simplex"),
            };
            make_sun_problem(d, set).map_err(|e| HarnessError::Config(e.to_string()))?;
            (format!("sun-{d}-{tag}"), ProblemData::Sun { d, set }, d, named("uniform(-10, 10)"))
        }
        ProblemKind::KojimaShindo => ("kojima-shindo".to_string(), ProblemData::KojimaShindo, 4, named("zeros")),
        ProblemKind::Hphard => {
            let m = p.m.ok_or_else(|| HarnessError::Config("hphard problem needs m".into()))?;
            let data = hphard_data(m, seed).map_err(|e| HarnessError::Config(e.to_string()))?;
            (format!("hphard-{m}-s{seed}"), ProblemData::HpHard(data), m, named("ones"))
        }
        ProblemKind::Logreg => {
            let (data, tag) = match (&p.fixture, &p.synthetic) {
                (Some(path), None) => {
                    let full = base_dir.join(path);
                    let text = std::fs::read_to_string(&full).map_err(|e| HarnessError::io(&full, e))?;
                    let data = parse_sparse_dataset_str(&text)
                        .map_err(|e| HarnessError::Config(format!("{}: {e}", full.display())))?;
                    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("data").to_string();
                    (data, stem)
                }
                (None, Some(syn)) => {
                    let data = synthetic_dataset(syn.samples, syn.features, syn.density, seed)
                        .map_err(|e| HarnessError::Config(e.to_string()))?;
                    (data, format!("synthetic-{}x{}-s{seed}", syn.samples, syn.features))
                }
                _ => {
                    return Err(HarnessError::Config("logreg problem needs exactly one of fixture or synthetic".into()))
                }
            };
            let mu_factor = p.mu_factor.unwrap_or(0.005);
            let n = data.features_count();
            let pd = ProblemData::LogReg { data, mu_factor };
            (format!("logreg-{tag}"), pd, n, named("zeros"))
        }
    };
    let id = p.id.clone().unwrap_or(default_id);
    let x0 = build_x0(p.x0.as_ref(), &default_x0, dim, seed, &id)?;
    let plan = ProblemPlan { id, data, x0 };
    plan.instantiate().map_err(|e| HarnessError::Config(format!("problem '{}': {e}", plan.id)))?;
    Ok(plan)
}

fn run_cell(problem: &ProblemPlan, solver: &SolverPlan, seed: u64) -> Result<(RunResult, u64, u64)> {
    let instance = problem.instantiate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0 = &problem.x0;
    let result = match solver {
        SolverPlan::Peg(c) => peg_solve(&instance, c, x0, &mut rng)?,
        SolverPlan::Ipeg(c) => ipeg_solve(&instance, c, x0, &mut rng)?,
        SolverPlan::Mpg(b) => mpg_solve(&instance, b, x0, &mut rng)?,
        SolverPlan::Tfbf(b) => tfbf_solve(&instance, b, x0)?,
        SolverPlan::Fista(b) => fista_solve(&instance, b, x0)?,
        SolverPlan::Korpelevich(b) => korpelevich_solve(&instance, b, x0)?,
    };
    Ok((result, instance.f_calls(), instance.prox_calls()))
}

/// Validate the whole matrix, run every cell, then write traces and the summary.
pub fn run_experiment(spec: &ExperimentSpec, opts: &RunOptions) -> Result<ExperimentOutcome> {
    spec.check()?;
    let problems = spec.problems.iter().map(|p| plan_problem(p, spec, &opts.base_dir)).collect::<Result<Vec<_>>>()?;
    let solvers = spec.solvers.iter().map(|s| plan_solver(s, spec)).collect::<Result<Vec<_>>>()?;

    let mut cells = Vec::new();
    for pi in 0..problems.len() {
        for si in 0..solvers.len() {
            for rep in 0..spec.global.repetitions {
                cells.push((pi, si, rep));
            }
        }
    }
    let work = || {
        cells
            .par_iter()
            .map(|&(pi, si, rep)| {
                let (result, f, p) = run_cell(&problems[pi], &solvers[si].1, spec.global.seed)?;
                Ok(CellResult {
                    problem_id: problems[pi].id.clone(),
                    solver_id: solvers[si].0.clone(),
                    repetition: rep,
                    result,
                    instance_f_calls: f,
                    instance_prox_calls: p,
                })
            })
            .collect::<Result<Vec<_>>>()
    };
    let mut results = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?
            .install(work)?,
        None => work()?,
    };
    if !spec.global.timing {
        for c in &mut results {
            c.result.wall_time = 0.0;
            c.result.trace.iter_mut().for_each(|r| r.elapsed = 0.0);
        }
    }

    let mut rows: Vec<SummaryRow> = results.iter().map(SummaryRow::from_cell).collect();
    crate::output::sort_rows(&mut rows);

    if let Some(dir) = opts.out_dir.as_ref().or(spec.global.out_dir.as_ref()) {
        let trace_dir = dir.join("traces");
        std::fs::create_dir_all(&trace_dir).map_err(|e| HarnessError::io(&trace_dir, e))?;
        for c in &results {
            let path = trace_dir.join(trace_file_name(&c.problem_id, &c.solver_id, c.repetition));
            write_trace_csv(&c.result, &path)?;
        }
        let csv_path = dir.join("summary.csv");
        let text = crate::output::emit_summary_table(&rows, crate::output::TableFormat::Csv);
        std::fs::write(&csv_path, text).map_err(|e| HarnessError::io(&csv_path, e))?;
        let txt_path = dir.join("summary.txt");
        let text = crate::output::emit_summary_table(&rows, crate::output::TableFormat::AlignedText);
        std::fs::write(&txt_path, text).map_err(|e| HarnessError::io(&txt_path, e))?;
    }
    Ok(ExperimentOutcome { rows, cells: results })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_parser() {
        assert_eq!(parse_uniform("uniform(-10, 10)"), Some((-10.0, 10.0)));
        assert_eq!(parse_uniform("uniform(1,0)"), None);
        assert_eq!(parse_uniform("normal(0,1)"), None);
    }

    #[test]
    fn x0_length_is_checked() {
        let err = build_x0(Some(&X0Spec::Values(vec![1.0])), &X0Spec::Named("zeros".into()), 4, 0, "ks");
        assert!(matches!(err, Err(HarnessError::Config(_))));
        let v = build_x0(None, &X0Spec::Named("uniform(-1, 1)".into()), 5, 3, "p").unwrap();
        assert_eq!(v, build_x0(None, &X0Spec::Named("uniform(-1, 1)".into()), 5, 3, "p").unwrap());
        assert!(v.iter().all(|x| (-1.0..1.0).contains(x)));
    }

    #[test]
    fn solver_ids_and_validation() {
        let spec =
            ExperimentSpec::from_toml_str("[[problem]]\nkind = \"kojima-shindo\"\n[[solver]]\nkind = \"ipeg\"\n")
                .unwrap();
        let (id, _) =
            plan_solver(&SolverSpec { kind: Some(SolverKind::Ipeg), delta: Some(1.01), ..Default::default() }, &spec)
                .unwrap();
        assert_eq!(id, "IPEG(1.01)");
        let bad = SolverSpec { kind: Some(SolverKind::Peg), delta: Some(0.73), alpha: Some(0.6), ..Default::default() };
        assert!(matches!(plan_solver(&bad, &spec), Err(HarnessError::Config(_))));
    }
}
