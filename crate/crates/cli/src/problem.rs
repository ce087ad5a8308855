//! Problem files carry interval endpoints as decimal strings. Parsing
//! rounds outward (lower endpoints down, upper endpoints up), so going
//! through a file can widen an interval by at most one ulp but can
//! never shrink it. Files written by this module use the exact decimal
//! expansion of each endpoint and therefore round-trip bit for bit.

use crate::error::{CliError, Result};
use intlin::{Interval, IntervalLinearSystem, IntervalMatrix, IntervalVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::path::Path;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<[String; 2]>>,
    pub b: Vec<[String; 2]>,
}

/// Exact value of a decimal literal, or None if it is not plain
/// decimal notation.
fn decimal_to_rational(s: &str) -> Option<BigRational> {
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(p) => (&s[..p], s[p + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(p) => (&mantissa[..p], &mantissa[p + 1..]),
        None => (mantissa, ""),
    };
    if frac_part.contains(['+', '-', '.']) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().ok()?;
    let scale = frac_part.len() as i32 - exp10;
    Some(if scale >= 0 {
        BigRational::new(num, BigInt::from(10).pow(scale as u32))
    } else {
        BigRational::from_integer(num * BigInt::from(10).pow((-scale) as u32))
    })
}

/// Parse one endpoint with outward rounding. The float parse is
/// correctly rounded to nearest, so a single ulp step in the safe
/// direction restores rigor whenever the decimal is not exactly
/// representable.
pub fn parse_endpoint(s: &str, upper: bool) -> std::result::Result<f64, String> {
    let s = s.trim();
    let f: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if !f.is_finite() {
        return Err(format!("endpoint out of range: {s:?}"));
    }
    let exact = decimal_to_rational(s).ok_or_else(|| format!("not plain decimal: {s:?}"))?;
    let parsed = BigRational::from_float(f).unwrap();
    Ok(match parsed.cmp(&exact) {
        Ordering::Equal => f,
        Ordering::Less if upper => f.next_up(),
        Ordering::Greater if !upper => f.next_down(),
        _ => f,
    })
}

/// Shortest decimal string that denotes exactly the given float: as
/// many fractional digits as its ulp requires, no more.
pub fn exact_decimal(v: f64) -> String {
    let bits = v.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i32;
    let mut mant = bits & ((1u64 << 52) - 1);
    let mut exp = if exp_field == 0 {
        -1074
    } else {
        mant |= 1 << 52;
        exp_field - 1075
    };
    if mant == 0 {
        return "0".to_string();
    }
    while mant & 1 == 0 && exp < 0 {
        mant >>= 1;
        exp += 1;
    }
    let frac_digits = (-exp).max(0) as usize;
    format!("{v:.frac_digits$}")
}

fn interval_to_strings(x: &Interval) -> [String; 2] {
    [exact_decimal(x.lo()), exact_decimal(x.hi())]
}

fn parse_interval(pair: &[String; 2]) -> std::result::Result<Interval, String> {
    let lo = parse_endpoint(&pair[0], false)?;
    let hi = parse_endpoint(&pair[1], true)?;
    Interval::new(lo, hi).map_err(|e| e.to_string())
}

impl ProblemFile {
    pub fn from_system(sys: &IntervalLinearSystem) -> Self {
        let n = sys.n();
        ProblemFile {
            n,
            a: (0..n)
                .map(|i| (0..n).map(|j| interval_to_strings(&sys.a()[(i, j)])).collect())
                .collect(),
            b: (0..n).map(|i| interval_to_strings(&sys.b()[i])).collect(),
        }
    }

    pub fn to_system(&self, origin: &str) -> Result<IntervalLinearSystem> {
        let fail = |message: String| CliError::Format {
            origin: origin.to_string(),
            message,
        };
        if self.a.len() != self.n
            || self.a.iter().any(|row| row.len() != self.n)
            || self.b.len() != self.n
        {
            return Err(fail(format!("dimensions disagree with n={}", self.n)));
        }
        let rows = self
            .a
            .iter()
            .map(|row| row.iter().map(parse_interval).collect())
            .collect::<std::result::Result<Vec<Vec<_>>, _>>()
            .map_err(&fail)?;
        let b = self
            .b
            .iter()
            .map(parse_interval)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(&fail)?;
        let a = IntervalMatrix::from_rows(rows).map_err(|e| fail(e.to_string()))?;
        IntervalLinearSystem::new(a, IntervalVector::new(b)).map_err(|e| fail(e.to_string()))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(ProblemFile),
    Many(Vec<ProblemFile>),
}

pub fn parse_problems(text: &str, origin: &str) -> Result<Vec<ProblemFile>> {
    match serde_json::from_str::<OneOrMany>(text) {
        Ok(OneOrMany::One(p)) => Ok(vec![p]),
        Ok(OneOrMany::Many(ps)) => Ok(ps),
        Err(e) => Err(CliError::Format {
            origin: origin.to_string(),
            message: e.to_string(),
        }),
    }
}

pub fn load_problems(path: &Path) -> Result<Vec<ProblemFile>> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    parse_problems(&text, &path.display().to_string())
}

/// A single problem serializes as one object, several as an array.
pub fn render_problems(problems: &[ProblemFile]) -> String {
    let json = if problems.len() == 1 {
        serde_json::to_string_pretty(&problems[0])
    } else {
        serde_json::to_string_pretty(problems)
    };
    json.expect("problem files always serialize")
}
