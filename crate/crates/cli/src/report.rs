//! Tightness accounting and the three output formats (aligned table,
//! CSV, JSON). Reports are plain floating point; rigor lives in the
//! enclosures themselves, which JSON output carries as exact decimal
//! endpoint strings.

use crate::error::{CliError, Result};
use crate::problem::exact_decimal;
use intlin::IntervalVector;
use serde::Serialize;

/// Sum of enclosure radii over sum of hull radii; 1 means the
/// enclosure is as sharp as the hull.
pub fn tightness_ratio(x: &IntervalVector, hull: &IntervalVector) -> Result<f64> {
    if x.len() != hull.len() {
        return Err(CliError::Usage(format!(
            "tightness ratio needs equal dimensions, got {} and {}",
            x.len(),
            hull.len()
        )));
    }
    let denom: f64 = hull.iter().map(|h| h.rad()).sum();
    if denom == 0.0 {
        return Err(CliError::DegenerateHull);
    }
    let num: f64 = x.iter().map(|e| e.rad()).sum();
    Ok(num / denom)
}

#[derive(Serialize)]
pub struct MethodReport {
    pub method: &'static str,
    pub enclosure: Vec<[String; 2]>,
    pub tightness: Option<f64>,
    pub iterations: usize,
    pub time_s: f64,
}

impl MethodReport {
    pub fn new(
        method: &'static str,
        enclosure: &IntervalVector,
        tightness: Option<f64>,
        iterations: usize,
        time_s: f64,
    ) -> Self {
        MethodReport {
            method,
            enclosure: enclosure
                .iter()
                .map(|e| [exact_decimal(e.lo()), exact_decimal(e.hi())])
                .collect(),
            tightness,
            iterations,
            time_s,
        }
    }
}

#[derive(Serialize)]
pub struct ProblemReport {
    pub problem: usize,
    pub n: usize,
    pub results: Vec<MethodReport>,
}

#[derive(Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub delta: f64,
    pub method: &'static str,
    pub mean_time_s: Option<f64>,
    pub mean_tightness: Option<f64>,
    pub failures: usize,
}

fn opt(v: Option<f64>, width: usize, digits: usize) -> String {
    match v {
        Some(v) => format!("{v:>width$.digits$}"),
        None => format!("{:>width$}", "-"),
    }
}

fn opt_sci(v: Option<f64>) -> String {
    match v {
        Some(v) => format!("{v:>12.3e}"),
        None => format!("{:>12}", "-"),
    }
}

/// Right-hand sides carry no radii, which the header states so the
/// tightness columns are read against the right instance family.
pub const POINT_B_NOTE: &str = "# right-hand sides are point vectors: radii apply to A only";

pub fn render_bench_table(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    out.push_str(POINT_B_NOTE);
    out.push('\n');
    out.push_str(&format!(
        "{:>4}  {:>8}  {:<16}{:>12}  {:>14}  {:>8}\n",
        "n", "delta", "method", "mean_time_s", "mean_tightness", "failures"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:>4}  {:>8}  {:<16}{}  {}  {:>8}\n",
            r.n,
            r.delta,
            r.method,
            opt_sci(r.mean_time_s),
            opt(r.mean_tightness, 14, 6),
            r.failures
        ));
    }
    out
}

pub fn render_bench_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Format {
            origin: "csv output".to_string(),
            message: e.to_string(),
        })?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Format {
        origin: "csv output".to_string(),
        message: e.to_string(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports always serialize")
}

pub fn render_solve_table(reports: &[ProblemReport]) -> String {
    let mut out = String::new();
    for p in reports {
        out.push_str(&format!("problem {} (n = {})\n", p.problem, p.n));
        for r in &p.results {
            out.push_str(&format!(
                "  {:<16}tightness {}  time {}  iterations {:>3}\n",
                r.method,
                opt(r.tightness, 9, 6),
                opt_sci(Some(r.time_s)),
                r.iterations
            ));
            for (i, [lo, hi]) in r.enclosure.iter().enumerate() {
                // endpoints rounded for reading; the JSON format keeps full precision
                let lo: f64 = lo.parse().unwrap_or(f64::NAN);
                let hi: f64 = hi.parse().unwrap_or(f64::NAN);
                out.push_str(&format!("    x{:<3} [{lo:.10}, {hi:.10}]\n", i + 1));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use intlin::Interval;

    fn vec2(a: (f64, f64), b: (f64, f64)) -> IntervalVector {
        IntervalVector::new(vec![
            Interval::new(a.0, a.1).unwrap(),
            Interval::new(b.0, b.1).unwrap(),
        ])
    }

    #[test]
    fn tightness_is_one_against_itself_and_scales_with_radii() {
        let hull = vec2((-0.5, 0.5), (1.0, 1.5));
        assert_eq!(tightness_ratio(&hull, &hull).unwrap(), 1.0);
        let doubled = vec2((-1.0, 1.0), (0.75, 1.75));
        assert_eq!(tightness_ratio(&doubled, &hull).unwrap(), 2.0);
    }

    #[test]
    fn degenerate_hull_is_flagged() {
        let hull = vec2((1.0, 1.0), (2.0, 2.0));
        let x = vec2((0.0, 2.0), (1.0, 3.0));
        assert!(matches!(
            tightness_ratio(&x, &hull),
            Err(CliError::DegenerateHull)
        ));
    }

    #[test]
    fn csv_exposes_the_documented_columns() {
        let rows = [BenchRow {
            n: 5,
            delta: 0.1,
            method: "magnitude",
            mean_time_s: Some(1e-5),
            mean_tightness: Some(1.003),
            failures: 0,
        }];
        let csv = render_bench_csv(&rows).unwrap();
        assert!(csv.starts_with("n,delta,method,mean_time_s,mean_tightness,failures\n"));
        assert!(csv.contains("5,0.1,magnitude,"));
    }

    #[test]
    fn table_header_states_the_point_rhs_convention() {
        assert!(render_bench_table(&[]).starts_with(POINT_B_NOTE));
    }
}
