//! Full-reference fidelity measures: MSE, PSNR (peak 255) and MSSIM.
//!
//! MSSIM follows the usual structural-similarity defaults: an 11x11 Gaussian
//! window with sigma 1.5, `C1 = (0.01 * 255)^2`, `C2 = (0.03 * 255)^2`, and
//! the mean taken over every pixel position with mirror extension at the
//! borders.

use crate::error::{Error, Result};
use crate::grid::{quantize, ImageGrid};
use crate::stencil::{convolve, GaussianKernel};

pub const PEAK: f64 = 255.0;
pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_RADIUS: usize = 5;
pub const SSIM_C1: f64 = (0.01 * PEAK) * (0.01 * PEAK);
pub const SSIM_C2: f64 = (0.03 * PEAK) * (0.03 * PEAK);

pub fn mse(a: &ImageGrid, b: &ImageGrid) -> Result<f64> {
    a.ensure_same_dims(b)?;
    let sum: f64 = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum / a.len() as f64)
}

/// `10 log10(255^2 / mse)`; `+inf` for a zero error.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK * PEAK / mse).log10()
    }
}

pub fn psnr(a: &ImageGrid, b: &ImageGrid) -> Result<f64> {
    mse(a, b).map(psnr_from_mse)
}

/// Per-pixel SSIM map.
pub fn ssim_map(a: &ImageGrid, b: &ImageGrid) -> Result<ImageGrid> {
    a.ensure_same_dims(b)?;
    let window = 2 * SSIM_RADIUS + 1;
    if a.width() < window || a.height() < window {
        return Err(Error::InvalidDimensions {
            width: a.width(),
            height: a.height(),
            reason: "MSSIM needs at least 11x11 pixels",
        });
    }
    let kernel = GaussianKernel::with_radius(SSIM_SIGMA, SSIM_RADIUS)?;
    let (w, h) = a.dims();
    let product = |f: fn(f64, f64) -> f64| {
        let data = a.as_slice().iter().zip(b.as_slice()).map(|(&x, &y)| f(x, y)).collect();
        convolve(&ImageGrid::from_raw(w, h, data), &kernel)
    };
    let mu_a = convolve(a, &kernel);
    let mu_b = convolve(b, &kernel);
    let aa = product(|x, _| x * x);
    let bb = product(|_, y| y * y);
    let ab = product(|x, y| x * y);

    let data = (0..w * h)
        .map(|k| {
            let (ma, mb) = (mu_a.as_slice()[k], mu_b.as_slice()[k]);
            let var_a = aa.as_slice()[k] - ma * ma;
            let var_b = bb.as_slice()[k] - mb * mb;
            let cov = ab.as_slice()[k] - ma * mb;
            ((2.0 * ma * mb + SSIM_C1) * (2.0 * cov + SSIM_C2))
                / ((ma * ma + mb * mb + SSIM_C1) * (var_a + var_b + SSIM_C2))
        })
        .collect();
    Ok(ImageGrid::from_raw(w, h, data))
}

/// Mean of the SSIM map.
pub fn mssim(a: &ImageGrid, b: &ImageGrid) -> Result<f64> {
    Ok(ssim_map(a, b)?.mean())
}

/// Rounds and clamps to 8-bit gray levels, as a PGM round trip would.
pub fn quantized(grid: &ImageGrid) -> ImageGrid {
    let data = grid.as_slice().iter().map(|&v| f64::from(quantize(v))).collect();
    ImageGrid::from_raw(grid.width(), grid.height(), data)
}

/// Formats a PSNR value, writing `inf` for a perfect match.
pub fn format_db(value: f64) -> String {
    if value == f64::INFINITY {
        "inf".to_owned()
    } else {
        format!("{value}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn noise_grid(w: usize, h: usize, seed: u64) -> ImageGrid {
        // Small LCG; enough spread for metric checks.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ImageGrid::from_fn(w, h, |_, _| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 255.0
        })
        .unwrap()
    }

    #[test]
    fn mse_basics() {
        let a = noise_grid(8, 6, 1);
        assert_eq!(mse(&a, &a).unwrap(), 0.0);
        let b = a.map(|v| v + 1.0).unwrap();
        assert!((mse(&a, &b).unwrap() - 1.0).abs() < 1e-12);
        assert!(mse(&a, &noise_grid(6, 8, 1)).is_err());
    }

    #[test]
    fn mse_matches_loop_oracle() {
        let a = noise_grid(13, 9, 3);
        let b = noise_grid(13, 9, 4);
        let mut sum = 0.0;
        for y in 0..9 {
            for x in 0..13 {
                let d = a.get(x, y) - b.get(x, y);
                sum += d * d;
            }
        }
        assert_eq!(mse(&a, &b).unwrap(), sum / 117.0);
    }

    #[test]
    fn psnr_reference_values() {
        assert_eq!(psnr_from_mse(0.0), f64::INFINITY);
        assert!((psnr_from_mse(1.0) - 48.1308).abs() < 1e-3);
        assert!(psnr_from_mse(255.0 * 255.0).abs() < 1e-12);
        let a = noise_grid(5, 5, 9);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
        assert_eq!(format_db(f64::INFINITY), "inf");
        assert_eq!(format_db(12.5), "12.5");
    }

    #[test]
    fn mssim_identity_and_symmetry() {
        let a = noise_grid(20, 16, 5);
        let b = noise_grid(20, 16, 6);
        assert!((mssim(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(mssim(&a, &b).unwrap(), mssim(&b, &a).unwrap());
        assert!(mssim(&a, &b).unwrap() < 1.0);
    }

    #[test]
    fn mssim_of_constant_shift_matches_closed_form() {
        let c = 100.0;
        let a = ImageGrid::filled(16, 16, c).unwrap();
        let b = ImageGrid::filled(16, 16, c + 10.0).unwrap();
        let want = (2.0 * c * (c + 10.0) + SSIM_C1) / (c * c + (c + 10.0) * (c + 10.0) + SSIM_C1);
        let map = ssim_map(&a, &b).unwrap();
        for &v in map.as_slice() {
            assert!((v - want).abs() < 1e-9, "{v} vs {want}");
        }
    }

    #[test]
    fn mssim_needs_a_full_window() {
        let a = noise_grid(10, 30, 1);
        assert!(mssim(&a, &a).is_err());
    }

    #[test]
    fn quantized_rounds_and_clamps() {
        let g = ImageGrid::new(3, 3, vec![-4.0, 0.5, 1.49, 254.6, 300.0, 7.0, 7.5, 8.5, 0.0]).unwrap();
        assert_eq!(
            quantized(&g).as_slice(),
            &[0.0, 1.0, 1.0, 255.0, 255.0, 7.0, 8.0, 9.0, 0.0]
        );
    }
}
