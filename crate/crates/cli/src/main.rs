//! `intlin` command-line tool: generate seeded interval linear
//! systems, solve problem files with a choice of enclosure methods,
//! benchmark tightness and timing, and spot-check containment.

use clap::{Args, Parser, Subcommand, ValueEnum};
use intlin::{RealMatrix, StoppingRule, UdMode};
use intlin_cli::{
    generate_instance, load_problems, prepare, render_bench_csv, render_bench_table, render_json,
    render_problems, render_solve_table, run_method, tightness_ratio, time_method, BenchRow,
    CliError, GeneratorConfig, Method, MethodReport, ProblemFile, ProblemReport, Result,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(name = "intlin", version, about = "Rigorous enclosures for interval linear systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate seeded random instances as a problem file
    Gen(GenArgs),
    /// Solve a problem file with the selected methods
    Solve(SolveArgs),
    /// Benchmark the methods over seeded random instances
    Bench(BenchArgs),
    /// Spot-check that sampled point solutions stay inside every enclosure
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// quadratic-cost lower bounds for the diagonal
    Cheap,
    /// verified two-sided diagonal bounds
    Exact,
}

impl From<ModeArg> for UdMode {
    fn from(m: ModeArg) -> UdMode {
        match m {
            ModeArg::Cheap => UdMode::Cheap,
            ModeArg::Exact => UdMode::Exact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Problem file: one JSON object or an array of them
    file: PathBuf,
    #[arg(long, value_delimiter = ',', default_values_t = Method::ALL)]
    methods: Vec<Method>,
    #[arg(long, value_enum, default_value_t = ModeArg::Cheap)]
    mode: ModeArg,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct BenchArgs {
    /// Dimensions, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Radii, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    delta: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instances per (n, delta) cell
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, value_delimiter = ',', default_values_t = Method::ALL)]
    methods: Vec<Method>,
    #[arg(long, value_enum, default_value_t = ModeArg::Cheap)]
    mode: ModeArg,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Cheap)]
    mode: ModeArg,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                0
            } else {
                1
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Gen(args) => run_gen(args),
        Cmd::Solve(args) => run_solve(args),
        Cmd::Bench(args) => run_bench(args),
        Cmd::Check(args) => run_check(args),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            context: format!("writing {}", path.display()),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_gen(args: GenArgs) -> Result<()> {
    let cfg = GeneratorConfig {
        n: args.n,
        delta: args.delta,
        seed: args.seed,
        count: args.count,
    };
    cfg.validate()?;
    let problems = (0..cfg.count)
        .map(|idx| Ok(ProblemFile::from_system(&generate_instance(&cfg, idx)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut text = render_problems(&problems);
    text.push('\n');
    emit(&text, args.out.as_deref())
}

#[derive(Serialize)]
struct SolveCsvRow {
    problem: usize,
    n: usize,
    method: &'static str,
    tightness: Option<f64>,
    time_s: f64,
    iterations: usize,
}

fn run_solve(args: SolveArgs) -> Result<()> {
    let stop = StoppingRule {
        tol: args.tol,
        max_iter: args.max_iter,
    };
    let mode = UdMode::from(args.mode);
    let origin = args.file.display().to_string();
    let problems = load_problems(&args.file)?;
    let mut reports = Vec::new();
    for (k, p) in problems.iter().enumerate() {
        let sys = p.to_system(&origin)?;
        let pre = prepare(&sys)?;
        // the hull is the baseline every tightness number is read against
        let hull = run_method(&pre, Method::NkHull, UdMode::Exact, &stop).ok();
        let mut results = Vec::new();
        for m in &args.methods {
            let t = time_method(&pre, *m, mode, &stop)?;
            let tightness = hull
                .as_ref()
                .and_then(|h| tightness_ratio(&t.enclosure, &h.enclosure).ok());
            results.push(MethodReport::new(
                m.token(),
                &t.enclosure,
                tightness,
                t.iterations,
                t.seconds,
            ));
        }
        reports.push(ProblemReport {
            problem: k,
            n: sys.n(),
            results,
        });
    }
    let text = match args.format {
        Format::Table => render_solve_table(&reports),
        Format::Json => {
            let mut s = render_json(&reports);
            s.push('\n');
            s
        }
        Format::Csv => {
            let rows: Vec<SolveCsvRow> = reports
                .iter()
                .flat_map(|p| {
                    p.results.iter().map(|r| SolveCsvRow {
                        problem: p.problem,
                        n: p.n,
                        method: r.method,
                        tightness: r.tightness,
                        time_s: r.time_s,
                        iterations: r.iterations,
                    })
                })
                .collect();
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row).map_err(|e| CliError::Format {
                    origin: "csv output".to_string(),
                    message: e.to_string(),
                })?;
            }
            String::from_utf8(w.into_inner().expect("vec sink never fails"))
                .expect("csv output is utf-8")
        }
    };
    emit(&text, None)
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let stop = StoppingRule {
        tol: args.tol,
        max_iter: args.max_iter,
    };
    let mode = UdMode::from(args.mode);
    let mut rows = Vec::new();
    for &n in &args.n {
        for &delta in &args.delta {
            let cfg = GeneratorConfig {
                n,
                delta,
                seed: args.seed,
                count: args.count,
            };
            cfg.validate()?;
            let mut times = vec![Vec::new(); args.methods.len()];
            let mut tights = vec![Vec::new(); args.methods.len()];
            let mut failures = vec![0usize; args.methods.len()];
            for idx in 0..cfg.count {
                let pre = match generate_instance(&cfg, idx).and_then(|raw| prepare(&raw)) {
                    Ok(pre) => pre,
                    Err(_) => {
                        for f in &mut failures {
                            *f += 1;
                        }
                        continue;
                    }
                };
                let hull = run_method(&pre, Method::NkHull, UdMode::Exact, &stop).ok();
                for (mi, m) in args.methods.iter().enumerate() {
                    match time_method(&pre, *m, mode, &stop) {
                        Ok(t) => {
                            times[mi].push(t.seconds);
                            if let Some(h) = &hull {
                                if let Ok(r) = tightness_ratio(&t.enclosure, &h.enclosure) {
                                    tights[mi].push(r);
                                }
                            }
                        }
                        Err(_) => failures[mi] += 1,
                    }
                }
            }
            if cfg.count == 0 {
                continue;
            }
            let mean = |v: &[f64]| {
                if v.is_empty() {
                    None
                } else {
                    Some(v.iter().sum::<f64>() / v.len() as f64)
                }
            };
            for (mi, m) in args.methods.iter().enumerate() {
                rows.push(BenchRow {
                    n,
                    delta,
                    method: m.token(),
                    mean_time_s: mean(&times[mi]),
                    mean_tightness: mean(&tights[mi]),
                    failures: failures[mi],
                });
            }
        }
    }
    let text = match args.format {
        Format::Table => render_bench_table(&rows),
        Format::Csv => render_bench_csv(&rows)?,
        Format::Json => {
            let mut s = render_json(&rows);
            s.push('\n');
            s
        }
    };
    emit(&text, None)
}

/// Point realizations per instance for the containment spot check.
const CHECK_SAMPLES: usize = 5;

fn run_check(args: CheckArgs) -> Result<()> {
    let stop = StoppingRule {
        tol: args.tol,
        max_iter: args.max_iter,
    };
    let mode = UdMode::from(args.mode);
    let cfg = GeneratorConfig {
        n: args.n,
        delta: args.delta,
        seed: args.seed,
        count: args.count,
    };
    cfg.validate()?;
    let mut escapes = 0usize;
    let mut skipped = 0usize;
    for idx in 0..cfg.count {
        let raw = generate_instance(&cfg, idx)?;
        let pre = prepare(&raw)?;
        let enclosures: Vec<(Method, intlin::IntervalVector)> = Method::ALL
            .iter()
            .map(|&m| Ok((m, run_method(&pre, m, mode, &stop)?.enclosure)))
            .collect::<Result<Vec<_>>>()?;
        // independent stream for sampling so instance bits stay stable
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(idx as u64 | 1 << 40);
        for _ in 0..CHECK_SAMPLES {
            let rows: Vec<Vec<f64>> = (0..cfg.n)
                .map(|i| (0..cfg.n).map(|j| sample_point(&mut rng, &raw.a()[(i, j)])).collect())
                .collect();
            let rhs: Vec<f64> = (0..cfg.n).map(|i| sample_point(&mut rng, &raw.b()[i])).collect();
            let m = RealMatrix::from_rows(rows).expect("sampled entries are finite");
            let solved = match intlin::verified_point_solve(&m, &rhs) {
                Ok(x) => x,
                Err(_) => {
                    skipped += 1;
                    continue;
                }
            };
            for (method, enc) in &enclosures {
                // an escape needs the whole verified bracket outside the
                // enclosure in some component; overlap cannot prove one
                let miss = solved
                    .iter()
                    .zip(enc.iter())
                    .any(|(s, e)| s.intersect(e).is_none());
                if miss {
                    escapes += 1;
                    eprintln!("escape: instance {idx}, method {}", method.token());
                }
            }
        }
    }
    println!(
        "checked {} instances x {CHECK_SAMPLES} samples: {escapes} escapes, {skipped} samples unsolvable",
        cfg.count
    );
    if escapes > 0 {
        return Err(CliError::Verify(format!(
            "{escapes} sampled solutions escaped an enclosure"
        )));
    }
    Ok(())
}

fn sample_point(rng: &mut ChaCha8Rng, x: &intlin::Interval) -> f64 {
    match rng.gen_range(0u8..4) {
        0 => x.lo(),
        1 => x.hi(),
        _ => rng.gen_range(x.lo()..=x.hi()),
    }
}
