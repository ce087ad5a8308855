//! Shared execution path for the solve, bench, and check verbs. A raw
//! system is preconditioned and certified once; each method then runs
//! as a self-contained call on the preconditioned system, and only
//! that call is timed.

use crate::error::{CliError, Result};
use clap::ValueEnum;
use intlin::{
    assemble_ud, certify_regular, gauss_seidel_step, iterate, krawczyk_limit,
    magnitude_enclosure, magnitude_enclosure_gamma0, ning_kearfott_hull, precondition_relax,
    IntervalLinearSystem, IntervalVector, StoppingRule, UdMode,
};
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Method {
    KrawczykLimit,
    GsIterative,
    GsLimit,
    Magnitude,
    NkHull,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::KrawczykLimit,
        Method::GsIterative,
        Method::GsLimit,
        Method::Magnitude,
        Method::NkHull,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            Method::KrawczykLimit => "krawczyk_limit",
            Method::GsIterative => "gs_iterative",
            Method::GsLimit => "gs_limit",
            Method::Magnitude => "magnitude",
            Method::NkHull => "nk_hull",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

/// Precondition and certify, mapping a failed certificate to the
/// verification exit class.
pub fn prepare(raw: &IntervalLinearSystem) -> Result<IntervalLinearSystem> {
    let pre = precondition_relax(raw)?;
    let cert = certify_regular(&pre);
    if !cert.verified {
        return Err(CliError::Verify(
            "system could not be certified regular after preconditioning".to_string(),
        ));
    }
    Ok(pre)
}

pub struct MethodRun {
    pub enclosure: IntervalVector,
    pub iterations: usize,
}

/// One method on an already-preconditioned system. The Gauss-Seidel
/// limit runs through the gamma = 0 operator, which produces the same
/// bits while skipping the diagonal lower bound.
pub fn run_method(
    pre: &IntervalLinearSystem,
    method: Method,
    mode: UdMode,
    stop: &StoppingRule,
) -> Result<MethodRun> {
    let run = match method {
        Method::KrawczykLimit => {
            let ud = assemble_ud(pre, UdMode::Cheap)?;
            MethodRun {
                enclosure: krawczyk_limit(pre, &ud)?,
                iterations: 0,
            }
        }
        Method::GsIterative => {
            let ud = assemble_ud(pre, UdMode::Cheap)?;
            let x0 = IntervalVector::symmetric_box(&ud.u_hi())?;
            let result = iterate(pre, gauss_seidel_step, x0, *stop)?;
            MethodRun {
                enclosure: result.enclosure,
                iterations: result.iterations,
            }
        }
        Method::GsLimit => MethodRun {
            enclosure: magnitude_enclosure_gamma0(pre)?,
            iterations: 0,
        },
        Method::Magnitude => MethodRun {
            enclosure: magnitude_enclosure(pre, mode)?,
            iterations: 0,
        },
        Method::NkHull => {
            let ud = assemble_ud(pre, UdMode::Exact)?;
            MethodRun {
                enclosure: ning_kearfott_hull(pre, &ud)?,
                iterations: 0,
            }
        }
    };
    Ok(run)
}

pub struct TimedRun {
    pub enclosure: IntervalVector,
    pub iterations: usize,
    pub seconds: f64,
}

/// Median-of-3 wall time around the method call alone; the enclosure
/// itself is identical across repetitions.
pub fn time_method(
    pre: &IntervalLinearSystem,
    method: Method,
    mode: UdMode,
    stop: &StoppingRule,
) -> Result<TimedRun> {
    let mut times = Vec::with_capacity(3);
    let mut out = None;
    for _ in 0..3 {
        let start = Instant::now();
        let run = run_method(pre, method, mode, stop)?;
        times.push(start.elapsed().as_secs_f64());
        out.get_or_insert(run);
    }
    times.sort_by(f64::total_cmp);
    let run = out.expect("three repetitions ran");
    Ok(TimedRun {
        enclosure: run.enclosure,
        iterations: run.iterations,
        seconds: times[1],
    })
}
