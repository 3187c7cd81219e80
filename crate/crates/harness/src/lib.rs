//! Experiment harness: expands a declarative spec into problem × solver runs
//! and writes traces, summary tables and plots.

pub mod error;
pub mod output;
pub mod plot;
pub mod runner;
pub mod spec;

pub use error::{HarnessError, Result};
pub use output::{
    emit_summary_table, parse_summary_csv, read_trace_csv, write_trace_csv, SummaryRow, TableFormat, TraceRow,
};
pub use plot::{emit_svg_plot, render_svg_plot, YScale};
pub use runner::{run_experiment, CellResult, ExperimentOutcome, RunOptions};
pub use spec::ExperimentSpec;
