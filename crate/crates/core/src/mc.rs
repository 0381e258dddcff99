//! Seeded Monte Carlo estimation with Bernoulli standard errors.
//!
//! Trials are cut into fixed-size batches. Batch `b` draws from a ChaCha8
//! stream keyed by `(seed, b)`: the key comes from the seed and `b` selects
//! the stream, so batches never overlap and can run on any worker. Hit
//! counts are summed as integers, which makes the result independent of how
//! batches were scheduled.
//!
//! Every event is evaluated on the same outcome within a trial.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::McError;
use crate::model::{validate, Compiled, EventExpr, Outcome, SampleSpace};
use crate::rational::Rational;

pub const REFERENCE_TRIALS: u64 = 10_000_000;
pub const DEFAULT_BATCH_SIZE: u64 = 1 << 16;
pub const DEFAULT_Z_THRESHOLD: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub batch_size: u64,
    /// Worker threads; 0 uses the global rayon pool. Never affects results.
    #[serde(default)]
    pub workers: usize,
}

impl McConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        McConfig { trials, seed, ..Default::default() }
    }

    pub fn with_workers(self, workers: usize) -> Self {
        McConfig { workers, ..self }
    }
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { trials: REFERENCE_TRIALS, seed: 0, batch_size: DEFAULT_BATCH_SIZE, workers: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub event_name: String,
    pub hits: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub std_err: f64,
}

impl McEstimate {
    /// Derives `p_hat` and `std_err` from the counts.
    pub fn from_counts(event_name: impl Into<String>, hits: u64, trials: u64) -> Self {
        assert!(trials >= 1 && hits <= trials, "need 1 <= trials and hits <= trials");
        let p_hat = hits as f64 / trials as f64;
        McEstimate { event_name: event_name.into(), hits, trials, p_hat, std_err: std_error(p_hat, trials) }
    }

    /// `hits / trials` as an exact fraction.
    pub fn exact_fraction(&self) -> Rational {
        Rational::frac(self.hits as i64, self.trials as i64)
    }
}

/// Plug-in Bernoulli standard error `sqrt(p (1 - p) / n)`.
pub fn std_error(p_hat: f64, trials: u64) -> f64 {
    (p_hat * (1.0 - p_hat) / trials as f64).sqrt()
}

/// A generator for one batch: the stream `batch` of the ChaCha8 key derived
/// from `seed`.
pub fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

/// Uniform value in `1..=cardinality` by rejecting the partial top interval
/// of the 64-bit range, so every category is exactly equally likely.
#[inline]
pub fn sample_category<R: RngCore + ?Sized>(rng: &mut R, cardinality: u32) -> u32 {
    debug_assert!(cardinality >= 1);
    let k = u64::from(cardinality);
    // 2^64 mod k; values above u64::MAX - rem would bias the low residues
    let rem = k.wrapping_neg() % k;
    let limit = u64::MAX - rem;
    loop {
        let x = rng.next_u64();
        if x <= limit {
            return (x % k) as u32 + 1;
        }
    }
}

/// One independent uniform draw for every slot of the space.
pub fn sample_outcome<R: RngCore + ?Sized>(space: &SampleSpace, rng: &mut R) -> Outcome {
    let slots: Vec<u32> = space.slot_cardinalities().into_iter().map(|k| sample_category(rng, k)).collect();
    Outcome::from_slots(space, &slots).expect("sampled values are in range")
}

/// Estimates every event from one shared stream of `config.trials` outcomes.
pub fn estimate(space: &SampleSpace, events: &[(String, EventExpr)], config: &McConfig) -> Result<Vec<McEstimate>, McError> {
    if config.trials == 0 || config.batch_size == 0 {
        return Err(McError::BadConfig);
    }
    let mut compiled = Vec::with_capacity(events.len());
    for (name, expr) in events {
        let diagnostics = validate(expr, space);
        if !diagnostics.is_empty() {
            return Err(McError::Invalid { name: name.clone(), diagnostics });
        }
        compiled.push(Compiled::for_space(expr, space).expect("validated expression resolves"));
    }

    let cards = space.slot_cardinalities();
    let batches = config.trials.div_ceil(config.batch_size);
    let run = || {
        (0..batches)
            .into_par_iter()
            .map(|b| {
                let len = config.batch_size.min(config.trials - b * config.batch_size);
                run_batch(&compiled, &cards, batch_rng(config.seed, b), len)
            })
            .reduce(|| vec![0u64; compiled.len()], |mut acc, hits| {
                acc.iter_mut().zip(hits).for_each(|(a, h)| *a += h);
                acc
            })
    };
    let hits = if config.workers == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .expect("thread pool")
            .install(run)
    };

    Ok(events
        .iter()
        .zip(hits)
        .map(|((name, _), h)| McEstimate::from_counts(name.clone(), h, config.trials))
        .collect())
}

fn run_batch(events: &[Compiled], cards: &[u32], mut rng: ChaCha8Rng, trials: u64) -> Vec<u64> {
    let mut hits = vec![0u64; events.len()];
    let mut slots = vec![0u32; cards.len()];
    for _ in 0..trials {
        for (s, &k) in slots.iter_mut().zip(cards) {
            *s = sample_category(&mut rng, k);
        }
        for (h, e) in hits.iter_mut().zip(events) {
            *h += e.eval(&slots) as u64;
        }
    }
    hits
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyVerdict {
    pub event_name: String,
    pub p_exact: Rational,
    pub p_hat: f64,
    #[serde(with = "crate::report::float_or_inf")]
    pub z_score: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// z-test of an estimate against an exact value: passes when
/// `|p_hat - exact| / std_err <= z_threshold`. With zero standard error only
/// exact equality of `hits / trials` and `exact` passes.
pub fn consistency_check(estimate: &McEstimate, exact: &Rational, z_threshold: f64) -> ConsistencyVerdict {
    let z_score = if estimate.std_err == 0.0 {
        if estimate.exact_fraction() == *exact {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (estimate.p_hat - exact.to_f64()).abs() / estimate.std_err
    };
    ConsistencyVerdict {
        event_name: estimate.event_name.clone(),
        p_exact: exact.clone(),
        p_hat: estimate.p_hat,
        z_score,
        threshold: z_threshold,
        pass: z_score <= z_threshold,
    }
}
