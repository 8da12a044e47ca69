//! Gaussian presmoothing and finite-difference operators on [`ImageGrid`]s.
//!
//! All operators use mirror ghost cells: index `-1` reads index `0` and index
//! `n` reads `n - 1`, which realizes the discrete Neumann condition. The
//! spatial step is 1 pixel.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::ImageGrid;

/// Normalized, symmetric 1-D Gaussian taps. The 2-D kernel is the outer
/// product of these weights with themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianKernel {
    xi: f64,
    radius: usize,
    weights: Vec<f64>,
}

impl GaussianKernel {
    /// Kernel with standard deviation `xi`, truncated at `ceil(3 xi)` and
    /// renormalized to unit sum.
    pub fn new(xi: f64) -> Result<Self> {
        check_xi(xi)?;
        Self::with_radius(xi, (3.0 * xi).ceil() as usize)
    }

    /// Kernel with an explicit truncation radius.
    pub fn with_radius(xi: f64, radius: usize) -> Result<Self> {
        check_xi(xi)?;
        if radius == 0 {
            return Err(Error::param("radius", "must be positive"));
        }
        let r = radius as f64;
        let raw: Vec<f64> = (0..=2 * radius)
            .map(|k| {
                let d = k as f64 - r;
                (-d * d / (2.0 * xi * xi)).exp()
            })
            .collect();
        let total: f64 = raw.iter().sum();
        let weights = raw.into_iter().map(|w| w / total).collect();
        Ok(Self { xi, radius, weights })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

fn check_xi(xi: f64) -> Result<()> {
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::param("xi", format!("must be positive and finite, got {xi}")));
    }
    // Keeps the tap count sane.
    if xi > 1e4 {
        return Err(Error::param("xi", format!("{xi} is too large")));
    }
    Ok(())
}

/// Shorthand for [`GaussianKernel::new`].
pub fn make_kernel(xi: f64) -> Result<GaussianKernel> {
    GaussianKernel::new(xi)
}

/// Maps any integer index onto `0..n` by half-sample symmetric reflection.
#[inline]
pub fn mirror_index(k: isize, n: usize) -> usize {
    let n = n as isize;
    let period = 2 * n;
    let m = k.rem_euclid(period);
    (if m < n { m } else { period - 1 - m }) as usize
}

/// Separable convolution: a horizontal pass, then a vertical pass.
///
/// Each output sample sums its taps left to right in a fixed order, so the
/// result does not depend on the thread count.
pub fn convolve(grid: &ImageGrid, kernel: &GaussianKernel) -> ImageGrid {
    let (w, h) = grid.dims();
    let r = kernel.radius as isize;
    let taps = &kernel.weights;
    let src = grid.as_slice();

    let mut horiz = vec![0.0; w * h];
    horiz.par_chunks_mut(w).enumerate().for_each(|(y, out)| {
        let row = &src[y * w..(y + 1) * w];
        for (x, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (k, &t) in taps.iter().enumerate() {
                acc += t * row[mirror_index(x as isize + k as isize - r, w)];
            }
            *o = acc;
        }
    });

    let mut out = vec![0.0; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(y, out)| {
        for (x, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for (k, &t) in taps.iter().enumerate() {
                acc += t * horiz[mirror_index(y as isize + k as isize - r, h) * w + x];
            }
            *o = acc;
        }
    });
    ImageGrid::from_raw(w, h, out)
}

/// Central differences `(gx, gy)` with mirror ghost cells.
///
/// On the first and last column `gx` is half the one-sided difference, so
/// the normal derivative at the border vanishes.
pub fn grad_central(grid: &ImageGrid) -> (ImageGrid, ImageGrid) {
    let (w, h) = grid.dims();
    let src = grid.as_slice();
    let mut gx = vec![0.0; w * h];
    let mut gy = vec![0.0; w * h];
    gx.par_chunks_mut(w)
        .zip(gy.par_chunks_mut(w))
        .enumerate()
        .for_each(|(y, (rx, ry))| {
            let up = if y == 0 { 0 } else { y - 1 };
            let down = if y + 1 == h { h - 1 } else { y + 1 };
            for x in 0..w {
                let left = if x == 0 { 0 } else { x - 1 };
                let right = if x + 1 == w { w - 1 } else { x + 1 };
                rx[x] = (src[y * w + right] - src[y * w + left]) / 2.0;
                ry[x] = (src[down * w + x] - src[up * w + x]) / 2.0;
            }
        });
    (ImageGrid::from_raw(w, h, gx), ImageGrid::from_raw(w, h, gy))
}

/// Pointwise Euclidean norm of a gradient field.
pub fn grad_magnitude(gx: &ImageGrid, gy: &ImageGrid) -> Result<ImageGrid> {
    gx.ensure_same_dims(gy)?;
    let data = gx
        .as_slice()
        .iter()
        .zip(gy.as_slice())
        .map(|(a, b)| (a * a + b * b).sqrt())
        .collect();
    Ok(ImageGrid::from_raw(gx.width(), gx.height(), data))
}

/// Five-point Laplacian with mirror ghost cells.
pub fn laplacian(grid: &ImageGrid) -> ImageGrid {
    let (w, h) = grid.dims();
    let src = grid.as_slice();
    let mut out = vec![0.0; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(y, row)| {
        let up = if y == 0 { 0 } else { y - 1 };
        let down = if y + 1 == h { h - 1 } else { y + 1 };
        for x in 0..w {
            let left = if x == 0 { 0 } else { x - 1 };
            let right = if x + 1 == w { w - 1 } else { x + 1 };
            let c = src[y * w + x];
            let dxx = src[y * w + right] - 2.0 * c + src[y * w + left];
            let dyy = src[down * w + x] - 2.0 * c + src[up * w + x];
            row[x] = dxx + dyy;
        }
    });
    ImageGrid::from_raw(w, h, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_shape_for_unit_xi() {
        let k = make_kernel(1.0).unwrap();
        assert_eq!(k.radius(), 3);
        assert_eq!(k.weights().len(), 7);
        assert!((k.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_center_weight_matches_truncated_normalization() {
        // Independent evaluation: density at 0 over the sum of densities at -3..=3.
        let pdf = |d: f64| (-d * d / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let z: f64 = (-3..=3).map(|d| pdf(d as f64)).sum();
        let k = make_kernel(1.0).unwrap();
        assert!((k.weights()[3] - 0.398_942_280_401_432_7 / z).abs() < 1e-12);
        assert!((k.weights()[3] - 0.399_050_279_652_454_9).abs() < 1e-12);
    }

    #[test]
    fn kernel_is_symmetric_and_unimodal() {
        for xi in [0.3, 0.5, 1.0, 1.5, 2.7, 6.0] {
            let k = make_kernel(xi).unwrap();
            let w = k.weights();
            let r = k.radius();
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for i in 0..=2 * r {
                assert_eq!(w[i], w[2 * r - i]);
            }
            for i in 0..r {
                assert!(w[i] < w[i + 1], "xi={xi}: not increasing toward center at {i}");
            }
        }
    }

    #[test]
    fn kernel_rejects_bad_xi() {
        for xi in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(make_kernel(xi).is_err());
        }
    }

    #[test]
    fn mirror_index_reflects() {
        let got: Vec<usize> = (-4..8).map(|k| mirror_index(k, 4)).collect();
        assert_eq!(got, vec![3, 2, 1, 0, 0, 1, 2, 3, 3, 2, 1, 0]);
        assert_eq!(mirror_index(-9, 3), 2);
    }

    #[test]
    fn convolution_keeps_constants() {
        let g = ImageGrid::filled(5, 4, 42.5).unwrap();
        for xi in [0.5, 1.0, 4.0] {
            let out = convolve(&g, &make_kernel(xi).unwrap());
            assert!(out.max_abs_diff(&g).unwrap() < 1e-12);
        }
    }

    #[test]
    fn impulse_response_center_is_squared_center_weight() {
        let mut data = vec![0.0; 81];
        data[40] = 1.0;
        let g = ImageGrid::new(9, 9, data).unwrap();
        let k = make_kernel(1.0).unwrap();
        let out = convolve(&g, &k);
        let c = k.weights()[3];
        assert!((out.get(4, 4) - c * c).abs() < 1e-15);
        assert!((out.get(5, 4) - c * k.weights()[4]).abs() < 1e-15);
    }

    #[test]
    fn ramp_gradient() {
        let g = ImageGrid::from_fn(6, 4, |x, _| x as f64).unwrap();
        let (gx, gy) = grad_central(&g);
        for y in 0..4 {
            assert_eq!(gx.get(0, y), 0.5);
            assert_eq!(gx.get(5, y), 0.5);
            for x in 1..5 {
                assert_eq!(gx.get(x, y), 1.0);
            }
        }
        assert!(gy.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn gradient_formula_instance() {
        let (a, b, c) = (3.0, -1.0, 8.5);
        let g = ImageGrid::from_fn(3, 3, |x, _| [a, b, c][x]).unwrap();
        let (gx, _) = grad_central(&g);
        assert_eq!(gx.get(1, 1), (c - a) / 2.0);
    }

    #[test]
    fn magnitude_is_euclidean() {
        let gx = ImageGrid::filled(3, 3, 3.0).unwrap();
        let gy = ImageGrid::filled(3, 3, 4.0).unwrap();
        assert!(grad_magnitude(&gx, &gy).unwrap().as_slice().iter().all(|&v| v == 5.0));
        let z = ImageGrid::filled(3, 3, 0.0).unwrap();
        assert!(grad_magnitude(&z, &z).unwrap().as_slice().iter().all(|&v| v == 0.0));
        let other = ImageGrid::filled(4, 3, 0.0).unwrap();
        assert!(matches!(grad_magnitude(&z, &other), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn laplacian_of_quadratic() {
        let g = ImageGrid::from_fn(7, 5, |x, _| (x * x) as f64).unwrap();
        let lap = laplacian(&g);
        for y in 0..5 {
            for x in 1..6 {
                assert_eq!(lap.get(x, y), 2.0);
            }
        }
    }

    #[test]
    fn constant_grid_has_zero_derivatives() {
        let g = ImageGrid::filled(4, 6, -3.25).unwrap();
        let (gx, gy) = grad_central(&g);
        let lap = laplacian(&g);
        for f in [&gx, &gy, &lap] {
            assert!(f.as_slice().iter().all(|&v| v == 0.0));
        }
    }
}
