//! Deterministic Monte Carlo: samples are drawn in fixed-size chunks, chunk
//! `c` using the ChaCha stream `c` of the seed, and chunk statistics are
//! merged in chunk order. The estimate is therefore a function of
//! `(seed, samples)` only, whatever the thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const CHUNK: usize = 4096;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self { value, stderr: 0.0, samples: 0 }
    }

    /// Whether `x` lies within `k` standard errors, with an absolute floor
    /// for estimates whose sample variance vanishes.
    pub fn agrees(&self, x: f64, k: f64, floor: f64) -> bool {
        (self.value - x).abs() <= k * self.stderr + floor
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let d = x - self.mean;
        self.mean += d / self.n;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Moments) -> Moments {
        if self.n == 0.0 {
            return o;
        }
        if o.n == 0.0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n / n,
            m2: self.m2 + o.m2 + d * d * self.n * o.n / n,
        }
    }
}

/// Estimates `E[f(rng)]` from `samples` draws; `f` consumes whatever
/// randomness one sample needs.
pub fn mc_mean<F>(samples: usize, seed: u64, f: F) -> Estimate
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = CHUNK.min(samples - c * CHUNK);
            let mut m = Moments::default();
            for _ in 0..len {
                m.push(f(&mut rng));
            }
            m
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let var = if total.n > 1.0 { total.m2 / (total.n - 1.0) } else { 0.0 };
    Estimate {
        value: total.mean,
        stderr: (var / total.n.max(1.0)).sqrt(),
        samples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn uniform_mean() {
        let e = mc_mean(100_000, 3, |r| r.random::<f64>());
        assert!(e.agrees(0.5, 4.0, 0.0), "{e:?}");
        assert!((e.stderr - (1.0 / 12.0f64 / 100_000.0).sqrt()).abs() < 1e-4);
    }

    #[test]
    fn deterministic_across_thread_pools() {
        let f = |r: &mut ChaCha8Rng| r.random::<f64>().powi(2);
        let a = mc_mean(50_000, 11, f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| mc_mean(50_000, 11, f));
        assert_eq!(a, b);
        assert_ne!(a, mc_mean(50_000, 12, f));
    }

    #[test]
    fn constant_has_zero_error() {
        let e = mc_mean(10_000, 0, |_| 2.0);
        assert_eq!(e.value, 2.0);
        assert_eq!(e.stderr, 0.0);
    }
}
