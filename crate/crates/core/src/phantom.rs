//! Synthetic test images.

use crate::error::Result;
use crate::grid::ImageGrid;

/// Bright disk on a dark background.
///
/// The disk is centered, its radius is 0.3 of the shorter side, and a pixel
/// belongs to it when its center lies inside the circle.
pub fn circle_phantom(width: usize, height: usize, background: f64, foreground: f64) -> Result<ImageGrid> {
    let cx = width as f64 / 2.0;
    let cy = height as f64 / 2.0;
    let r = 0.3 * width.min(height) as f64;
    ImageGrid::from_fn(width, height, |x, y| {
        let dx = x as f64 + 0.5 - cx;
        let dy = y as f64 + 0.5 - cy;
        if dx * dx + dy * dy <= r * r {
            foreground
        } else {
            background
        }
    })
}

/// The 128x128 two-level phantom (60 / 190) used by the benchmarks.
pub fn standard_circle() -> ImageGrid {
    circle_phantom(128, 128, 60.0, 190.0).expect("fixed dimensions are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_levels_and_symmetric() {
        let g = standard_circle();
        assert!(g.as_slice().iter().all(|&v| v == 60.0 || v == 190.0));
        assert_eq!(g.get(64, 64), 190.0);
        assert_eq!(g.get(0, 0), 60.0);
        assert_eq!(g.flip_horizontal(), g);
        let inside = g.as_slice().iter().filter(|&&v| v == 190.0).count() as f64;
        let area = std::f64::consts::PI * (0.3f64 * 128.0).powi(2);
        assert!((inside - area).abs() / area < 0.02);
    }
}
