//! Seeded random instances: midpoints of A and b drawn uniformly from
//! [-10, 10], every entry of A inflated by a fixed radius, b left as a
//! point vector. Instance index selects an independent PRNG stream, so
//! any instance can be regenerated without drawing its predecessors.

use crate::error::{CliError, Result};
use intlin::{certify_regular, precondition_relax, Interval, IntervalLinearSystem, IntervalMatrix, IntervalVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RETRY_LIMIT: usize = 100;

#[derive(Clone, Copy, Debug)]
pub struct GeneratorConfig {
    pub n: usize,
    pub delta: f64,
    pub seed: u64,
    pub count: usize,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(CliError::Usage("n must be at least 1".to_string()));
        }
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(CliError::Usage(format!(
                "delta must be a positive finite number, got {}",
                self.delta
            )));
        }
        Ok(())
    }
}

/// One random system, regenerated until its preconditioned form
/// certifies as regular. Failed draws advance the stream, so retries
/// stay deterministic.
pub fn generate_instance(cfg: &GeneratorConfig, index: usize) -> Result<IntervalLinearSystem> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let spread = Interval::new(-cfg.delta, cfg.delta)?;
    for _ in 0..RETRY_LIMIT {
        let rows = (0..cfg.n)
            .map(|_| {
                (0..cfg.n)
                    .map(|_| Interval::point(rng.gen_range(-10.0..10.0))?.add(&spread))
                    .collect()
            })
            .collect::<intlin::Result<Vec<Vec<_>>>>()?;
        let b = (0..cfg.n)
            .map(|_| Interval::point(rng.gen_range(-10.0..10.0)))
            .collect::<intlin::Result<Vec<_>>>()?;
        let raw = IntervalLinearSystem::new(IntervalMatrix::from_rows(rows)?, IntervalVector::new(b))?;
        if let Ok(pre) = precondition_relax(&raw) {
            if certify_regular(&pre).verified {
                return Ok(raw);
            }
        }
    }
    Err(CliError::GenerationExhausted {
        n: cfg.n,
        delta: cfg.delta,
        retries: RETRY_LIMIT,
    })
}
