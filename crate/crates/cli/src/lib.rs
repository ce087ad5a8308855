//! Library side of the benchmark harness: instance generation, problem
//! file I/O, method execution, and report rendering. The binary in
//! main.rs is a thin argument layer over these modules, and the
//! integration tests drive them directly.

pub mod error;
pub mod generate;
pub mod problem;
pub mod report;
pub mod runner;

pub use error::{CliError, Result};
pub use generate::{generate_instance, GeneratorConfig, RETRY_LIMIT};
pub use problem::{exact_decimal, load_problems, parse_endpoint, parse_problems, render_problems, ProblemFile};
pub use report::{
    render_bench_csv, render_bench_table, render_json, render_solve_table, tightness_ratio,
    BenchRow, MethodReport, ProblemReport, POINT_B_NOTE,
};
pub use runner::{prepare, run_method, time_method, Method, MethodRun, TimedRun};
