//! Multiplicative speckle synthesis, `J = I * eta` with `eta ~ Gamma(L, L)`.
//!
//! Randomness comes from ChaCha8 seeded through `seed_from_u64`; the noise
//! field is drawn pixel by pixel in row-major order, so a given
//! `(image, looks, seed)` always yields the same output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Open01, StandardNormal};

use crate::error::{Error, Result};
use crate::grid::ImageGrid;

/// Number of looks and PRNG seed for one noise realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpeckleSpec {
    looks: u32,
    seed: u64,
}

impl SpeckleSpec {
    pub fn new(looks: u32, seed: u64) -> Result<Self> {
        if looks == 0 {
            return Err(Error::param("looks", "must be at least 1"));
        }
        Ok(Self { looks, seed })
    }

    pub fn looks(&self) -> u32 {
        self.looks
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Streaming Gamma(shape = L, rate = L) sampler.
///
/// Uses the Marsaglia–Tsang squeeze; since `L >= 1` the shape never needs the
/// `alpha < 1` boost.
#[derive(Debug, Clone)]
pub struct GammaSampler {
    rng: ChaCha8Rng,
    looks: f64,
    d: f64,
    c: f64,
}

impl GammaSampler {
    pub fn new(spec: SpeckleSpec) -> Self {
        let looks = f64::from(spec.looks);
        let d = looks - 1.0 / 3.0;
        Self {
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
            looks,
            d,
            c: 1.0 / (9.0 * d).sqrt(),
        }
    }

    pub fn sample(&mut self) -> f64 {
        loop {
            let x: f64 = self.rng.sample(StandardNormal);
            let t = 1.0 + self.c * x;
            if t <= 0.0 {
                continue;
            }
            let v = t * t * t;
            let u: f64 = self.rng.sample(Open01);
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + self.d * (1.0 - v + v.ln()) {
                return self.d * v / self.looks;
            }
        }
    }
}

/// `count` deterministic draws from Gamma(L, L).
pub fn sample_gamma_ll(spec: SpeckleSpec, count: usize) -> Vec<f64> {
    let mut sampler = GammaSampler::new(spec);
    (0..count).map(|_| sampler.sample()).collect()
}

/// Multiplies every pixel by an independent Gamma(L, L) factor.
///
/// The result is not clamped or quantized.
pub fn apply_speckle(clean: &ImageGrid, spec: SpeckleSpec) -> ImageGrid {
    let eta = sample_gamma_ll(spec, clean.len());
    let data = clean.as_slice().iter().zip(&eta).map(|(i, n)| i * n).collect();
    ImageGrid::from_raw(clean.width(), clean.height(), data)
}
