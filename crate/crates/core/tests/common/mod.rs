#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use speckle_tde::ImageGrid;

pub fn random_grid(seed: u64, width: usize, height: usize, lo: f64, hi: f64) -> ImageGrid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ImageGrid::from_fn(width, height, |_, _| rng.random_range(lo..hi)).unwrap()
}

/// Reads `a[y][x]` through half-sample mirror padding, written out case by case.
pub fn mirrored(a: &ImageGrid, x: isize, y: isize) -> f64 {
    fn fold(mut k: isize, n: isize) -> usize {
        loop {
            if k < 0 {
                k = -k - 1;
            } else if k >= n {
                k = 2 * n - 1 - k;
            } else {
                return k as usize;
            }
        }
    }
    a.get(fold(x, a.width() as isize), fold(y, a.height() as isize))
}

/// Direct 2-D convolution with the outer-product Gaussian.
pub fn naive_gaussian(a: &ImageGrid, xi: f64) -> ImageGrid {
    let r = (3.0 * xi).ceil() as isize;
    let w1: Vec<f64> = (-r..=r).map(|d| (-(d * d) as f64 / (2.0 * xi * xi)).exp()).collect();
    let z: f64 = w1.iter().sum();
    ImageGrid::from_fn(a.width(), a.height(), |x, y| {
        let mut acc = 0.0;
        for dy in -r..=r {
            for dx in -r..=r {
                let k = w1[(dy + r) as usize] * w1[(dx + r) as usize] / (z * z);
                acc += k * mirrored(a, x as isize + dx, y as isize + dy);
            }
        }
        acc
    })
    .unwrap()
}
