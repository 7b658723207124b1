//! Runs suites over models and assembles the report.

use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stonemeasure::Exec;

use crate::config::Caps;
use crate::models::Model;
use crate::report::{Approx, Recorder, Report, SuiteReport};
use crate::suites::{Job, SuiteDef};

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub caps: Caps,
    /// Minimum randomized draws per suite across all models.
    pub draws: usize,
    /// Record wall times and a timestamp; off for byte-reproducible reports.
    pub timestamp: bool,
    pub exec: Exec,
}

fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3))
}

/// Per-(suite, model) stream, independent of scheduling.
pub fn stream_seed(seed: u64, suite: &str, model_index: usize) -> u64 {
    let mut x = seed ^ fnv1a(suite).rotate_left(17) ^ (model_index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    // splitmix64 finalizer
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn draws_per_model(suite: &SuiteDef, requested: usize, models: usize) -> usize {
    requested.max(suite.min_draws).div_ceil(models.max(1))
}

/// Runs one suite on every model; models are independent so they fan out
/// under `exec`, and results merge in model order.
pub fn run_suite(suite: &SuiteDef, models: &[Model], opts: &RunOptions) -> SuiteReport {
    let start = Instant::now();
    let draws = draws_per_model(suite, opts.draws, models.len());
    let parts = opts.exec.map_range(models.len(), |index| {
        let job = Job {
            suite: suite.name,
            seed: opts.seed,
            caps: opts.caps,
            draws,
            model_index: index,
            model: &models[index],
            primary: index == 0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(opts.seed, suite.name, index));
        let mut rec = Recorder::default();
        (suite.run)(&job, &mut rng, &mut rec);
        rec
    });
    let mut total = Recorder::default();
    for part in parts {
        total.merge(part);
    }
    SuiteReport {
        name: suite.name.to_string(),
        anchor: suite.anchor.to_string(),
        cases: total.cases,
        passed: total.failure_count == 0 && total.cases > 0,
        failure_count: total.failure_count,
        failures: total.failures,
        approx: total.approx.iter().map(|(label, v)| Approx::new(label, *v)).collect(),
        millis: if opts.timestamp { start.elapsed().as_millis() as u64 } else { 0 },
    }
}

pub fn run(suites: &[&SuiteDef], models: &[Model], opts: &RunOptions) -> Report {
    let reports = opts.exec.map(suites, |suite| run_suite(suite, models, opts));
    let timestamp =
        opts.timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    Report {
        seed: opts.seed,
        timestamp,
        models: models.len(),
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_differ_by_suite_and_model() {
        let a = stream_seed(7, "lemma-2.2", 0);
        assert_ne!(a, stream_seed(7, "lemma-2.3", 0));
        assert_ne!(a, stream_seed(7, "lemma-2.2", 1));
        assert_ne!(a, stream_seed(8, "lemma-2.2", 0));
        assert_eq!(a, stream_seed(7, "lemma-2.2", 0));
    }

    #[test]
    fn draws_are_spread() {
        let suite = crate::suites::find("thm-2.1-separation").unwrap();
        assert_eq!(draws_per_model(suite, 200, 211), 3);
        assert_eq!(draws_per_model(suite, 200, 1), 500);
    }
}
