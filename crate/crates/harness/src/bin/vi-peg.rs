use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vipeg_core::problems::{divergence_example, divergence_threshold, Classification};
use vipeg_core::stepsize::{kappa, kappa_oracle};
use vipeg_harness::{
    emit_summary_table, emit_svg_plot, read_trace_csv, run_experiment, ExperimentSpec, HarnessError, RunOptions,
    TableFormat, YScale,
};

#[derive(Parser)]
#[command(name = "vi-peg", version, about = "Proximal extrapolated gradient solvers for variational inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every problem × solver cell of an experiment spec
    Run {
        spec: PathBuf,
        /// output directory (overrides the spec)
        #[arg(long)]
        out: Option<PathBuf>,
        /// worker threads
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Fixed-step iteration on min x²/2, showing the divergence threshold
    DemoDivergence {
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        x0: f64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
    },
    /// Evaluate the step-size bound kappa(delta)
    Kappa {
        #[arg(long)]
        delta: f64,
        /// also evaluate the brute-force max-min
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 400)]
        grid: usize,
    },
    /// Plot one column of trace CSVs as SVG
    Plot {
        #[arg(required = true)]
        traces: Vec<PathBuf>,
        #[arg(long, default_value = "plot.svg")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Column::Residual)]
        column: Column,
        #[arg(long)]
        linear: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Column {
    Residual,
    Lambda,
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.command {
        Command::Run { spec, out, jobs } => {
            let mut parsed = ExperimentSpec::load(&spec)?;
            parsed.apply_env_overrides()?;
            let base_dir = spec.parent().map(PathBuf::from).unwrap_or_default();
            let out_dir = out.or_else(|| parsed.global.out_dir.as_ref().map(|d| base_dir.join(d)));
            let out_dir = out_dir.unwrap_or_else(|| PathBuf::from("vipeg-out"));
            let outcome = run_experiment(&parsed, &RunOptions { out_dir: Some(out_dir.clone()), jobs, base_dir })?;
            print!("{}", emit_summary_table(&outcome.rows, TableFormat::AlignedText));
            println!("results written to {}", out_dir.display());
            Ok(if outcome.all_converged() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::DemoDivergence { delta, lambda, x0, steps } => {
            let out = divergence_example(delta, lambda, x0, steps)?;
            let verdict = match out.classification {
                Classification::Converges => "converges",
                Classification::Diverges => "diverges",
                Classification::Inconclusive => "inconclusive",
            };
            println!("threshold 2/(2*delta+1) = {:.6}", divergence_threshold(delta));
            println!("root magnitudes        = {:.6}, {:.6}", out.root_magnitudes[0], out.root_magnitudes[1]);
            println!("steps taken            = {}", out.trace.len() - 1);
            println!("last iterate           = {:e}", out.trace.last().copied().unwrap_or(x0));
            println!("classification         = {verdict}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Kappa { delta, oracle, grid } => {
            println!("kappa({delta}) = {:.15}", kappa(delta)?);
            if oracle {
                println!("oracle        = {:.15}", kappa_oracle(delta, grid)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Plot { traces, out, column, linear } => {
            let mut series = Vec::new();
            for path in &traces {
                let rows = read_trace_csv(path)?;
                let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("trace").to_string();
                let pts = rows
                    .iter()
                    .map(|r| {
                        let y = match column {
                            Column::Residual => r.residual,
                            Column::Lambda => r.lambda,
                        };
                        (r.iter as f64, y)
                    })
                    .collect();
                series.push((name, pts));
            }
            let scale = if linear { YScale::Linear } else { YScale::Log };
            emit_svg_plot(&series, scale, &out)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
