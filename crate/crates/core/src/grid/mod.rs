//! Real-valued image grids and their file formats.
//!
//! An [`ImageGrid`] carries every field the solvers touch: the noisy input,
//! the restored iterates, the edge field and the diffusivity. Intensities are
//! stored as `f64` gray levels; quantization to 8 bits happens only when a
//! grid is written as PGM.

mod csv;
mod pgm;

pub use self::csv::{decode_csv_matrix, encode_csv_matrix, read_csv_matrix, write_csv_matrix};
pub use self::pgm::{decode_pgm, encode_pgm, quantize, read_pgm, write_pgm};

use crate::error::{Error, Result};

/// Smallest admissible side length; the stencils need one interior layer.
pub const MIN_SIDE: usize = 3;

/// Row-major rectangular array of finite intensities, at least 3x3.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageGrid {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl ImageGrid {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        check_dims(width, height)?;
        if data.len() != width * height {
            return Err(Error::InvalidDimensions {
                width,
                height,
                reason: "data length does not equal width * height",
            });
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                x: k % width,
                y: k / width,
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds a grid by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    /// Internal constructor for buffers derived from valid grids.
    ///
    /// Callers guarantee the dimensions; finiteness is checked in debug builds
    /// and by the solver's per-step guard.
    pub(crate) fn from_raw(width: usize, height: usize, data: Vec<f64>) -> Self {
        debug_assert!(width >= MIN_SIDE && height >= MIN_SIDE);
        debug_assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Value at column `x`, row `y`. Panics when out of bounds.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }

    /// Largest absolute elementwise difference. Fails on a dimension mismatch.
    pub fn max_abs_diff(&self, other: &ImageGrid) -> Result<f64> {
        self.ensure_same_dims(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    pub fn is_all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Applies `f` to every pixel; the result must stay finite.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<ImageGrid> {
        ImageGrid::new(self.width, self.height, self.data.iter().map(|&v| f(v)).collect())
    }

    /// Left-right mirror image.
    pub fn flip_horizontal(&self) -> ImageGrid {
        let mut data = Vec::with_capacity(self.data.len());
        for y in 0..self.height {
            data.extend(self.row(y).iter().rev());
        }
        ImageGrid::from_raw(self.width, self.height, data)
    }

    /// Copies the pixels inside `rect` into a new grid.
    pub fn crop(&self, rect: &PixelRect) -> Result<ImageGrid> {
        rect.check_within(self)?;
        let mut data = Vec::with_capacity(rect.area());
        for y in rect.y0..rect.y1 {
            data.extend_from_slice(&self.row(y)[rect.x0..rect.x1]);
        }
        ImageGrid::new(rect.width(), rect.height(), data)
    }

    pub(crate) fn ensure_same_dims(&self, other: &ImageGrid) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width < MIN_SIDE || height < MIN_SIDE {
        return Err(Error::InvalidDimensions {
            width,
            height,
            reason: "both sides must be at least 3",
        });
    }
    if width.checked_mul(height).is_none() {
        return Err(Error::InvalidDimensions {
            width,
            height,
            reason: "pixel count overflows",
        });
    }
    Ok(())
}

/// Half-open pixel rectangle `[x0, x1) x [y0, y1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelRect {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl PixelRect {
    pub fn new(x0: usize, y0: usize, x1: usize, y1: usize) -> Self {
        Self { x0, y0, x1, y1 }
    }

    /// The rectangle covering all of `grid`.
    pub fn full(grid: &ImageGrid) -> Self {
        Self::new(0, 0, grid.width(), grid.height())
    }

    pub fn width(&self) -> usize {
        self.x1.saturating_sub(self.x0)
    }

    pub fn height(&self) -> usize {
        self.y1.saturating_sub(self.y0)
    }

    pub fn area(&self) -> usize {
        self.width() * self.height()
    }

    pub fn check_within(&self, grid: &ImageGrid) -> Result<()> {
        if self.x0 < self.x1 && self.x1 <= grid.width() && self.y0 < self.y1 && self.y1 <= grid.height() {
            Ok(())
        } else {
            Err(Error::InvalidRect {
                x0: self.x0,
                y0: self.y0,
                x1: self.x1,
                y1: self.y1,
                width: grid.width(),
                height: grid.height(),
            })
        }
    }
}
