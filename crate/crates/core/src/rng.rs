//! Counter-based deterministic RNG with stable substream derivation.
//!
//! Monte Carlo trials run in parallel; each trial derives its own key as
//! `mix(master, stream, trial)` through a splitmix-style avalanche, so the
//! draws of one trial never depend on how many values another trial
//! consumed. Identical `(master, stream, trial)` always reproduces the same
//! sequence, bit for bit.

use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 finalizer.
#[inline]
pub fn avalanche(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Master seed plus a stream id, the unit of reproducibility for a whole
/// experiment. Per-trial keys come from [`Seed::substream`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub master: u64,
    pub stream: u64,
}

impl Seed {
    pub fn new(master: u64, stream: u64) -> Self {
        Self { master, stream }
    }

    /// Stable key for trial `t`: three chained avalanche rounds over
    /// (master, stream, t).
    pub fn substream(&self, t: u64) -> u64 {
        let z = avalanche(self.master.wrapping_add(GOLDEN));
        let z = avalanche(z ^ self.stream.wrapping_mul(0xD605_0B1D_58A4_05C1 | 1));
        avalanche(z ^ t.wrapping_mul(GOLDEN | 1))
    }

    pub fn rng(&self) -> Rng {
        Rng::from_key(self.substream(0))
    }

    pub fn rng_for_trial(&self, t: u64) -> Rng {
        Rng::from_key(self.substream(t))
    }
}

/// Counter RNG: output_i = avalanche(key + i * GOLDEN). Gaussians come from
/// Box-Muller on the counter stream (the sine partner is cached), which keeps
/// draws deterministic across platforms with no rejection loop.
#[derive(Debug, Clone)]
pub struct Rng {
    key: u64,
    counter: u64,
    cached_gaussian: Option<f64>,
}

impl Rng {
    pub fn from_key(key: u64) -> Self {
        Self {
            key,
            counter: 0,
            cached_gaussian: None,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        avalanche(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform in [0, 1) with 53 bits of mantissa.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in (0, 1]; safe to feed to ln().
    #[inline]
    fn next_f64_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn next_bit(&mut self) -> u8 {
        (self.next_u64() & 1) as u8
    }

    /// Uniform integer in [0, bound) by rejection-free scaling (128-bit multiply).
    pub fn next_below(&mut self, bound: u64) -> u64 {
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }

    /// Standard normal via Box-Muller; pairs are consumed alternately.
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(g) = self.cached_gaussian.take() {
            return g;
        }
        let r = (-2.0 * self.next_f64_open().ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * self.next_f64();
        self.cached_gaussian = Some(r * theta.sin());
        r * theta.cos()
    }
}
