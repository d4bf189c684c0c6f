//! Deterministic parallel sweeps over index ranges.
//!
//! Work is cut into fixed-size chunks independent of the thread count; each
//! chunk records its first failure per check together with the sweep
//! position, and the merge keeps the lowest position. Results are therefore
//! identical for any number of workers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Sweep position used to order witnesses.
pub type Key = (u64, u64, u64);

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checks: u64,
    pub failures: BTreeMap<&'static str, (u64, (Key, String))>,
    /// Free-form counters (expected violations, skipped triples, ...).
    pub counters: BTreeMap<&'static str, u64>,
}

impl Outcome {
    #[inline]
    pub fn check(&mut self, id: &'static str, ok: bool, key: Key, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.record(id, key, witness);
        }
    }

    pub fn record(&mut self, id: &'static str, key: Key, witness: impl FnOnce() -> String) {
        match self.failures.get_mut(id) {
            Some((count, first)) => {
                *count += 1;
                if key < first.0 {
                    *first = (key, witness());
                }
            }
            None => {
                self.failures.insert(id, (1, (key, witness())));
            }
        }
    }

    #[inline]
    pub fn bump(&mut self, counter: &'static str, by: u64) {
        *self.counters.entry(counter).or_insert(0) += by;
    }

    pub fn merge(mut self, other: Outcome) -> Outcome {
        self.checks += other.checks;
        for (id, (count, first)) in other.failures {
            match self.failures.get_mut(id) {
                Some((c, f)) => {
                    *c += count;
                    if first.0 < f.0 {
                        *f = first;
                    }
                }
                None => {
                    self.failures.insert(id, (count, first));
                }
            }
        }
        for (k, v) in other.counters {
            *self.counters.entry(k).or_insert(0) += v;
        }
        self
    }

    pub fn counter(&self, k: &str) -> u64 {
        self.counters.get(k).copied().unwrap_or(0)
    }

    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

const CHUNK: usize = 64;

/// Runs `body(i, outcome)` for every `i` in `0..len`.
pub fn over_range<F>(len: usize, body: F) -> Outcome
where
    F: Fn(usize, &mut Outcome) + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut out = Outcome::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(len) {
                body(i, &mut out);
            }
            out
        })
        .reduce(Outcome::default, Outcome::merge)
}

/// Runs `body(sample_index, rng, outcome)` `samples` times. Sample `k` draws
/// from a generator seeded by `(seed, k / CHUNK)`, so the sequence does not
/// depend on scheduling.
pub fn sampled<F>(samples: u64, seed: u64, body: F) -> Outcome
where
    F: Fn(u64, &mut ChaCha8Rng, &mut Outcome) + Sync,
{
    let chunk = 4096u64;
    let chunks = samples.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ c.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut out = Outcome::default();
            for k in c * chunk..((c + 1) * chunk).min(samples) {
                body(k, &mut rng, &mut out);
            }
            out
        })
        .reduce(Outcome::default, Outcome::merge)
}

/// Uniform index below `n`.
#[inline]
pub fn pick(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.random_range(0..n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_key_wins_regardless_of_threads() {
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| {
                over_range(10_000, |i, out| {
                    out.check("mod7", i % 7 != 3, (i as u64, 0, 0), || format!("i={i}"));
                })
            })
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.checks, 10_000);
        assert_eq!(a.failures["mod7"], b.failures["mod7"]);
        assert_eq!(a.failures["mod7"].1 .1, "i=3");
    }

    #[test]
    fn sampling_is_reproducible() {
        let run = || {
            sampled(10_000, 7, |k, rng, out| {
                let x = pick(rng, 1000);
                out.check("small", x < 999, (k, 0, 0), || format!("{k}:{x}"));
            })
        };
        let (a, b) = (run(), run());
        assert_eq!(a.checks, b.checks);
        assert_eq!(a.failures.get("small"), b.failures.get("small"));
    }
}
