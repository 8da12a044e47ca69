//! Speckle removal for gray-level images with a coupled telegraph-diffusion
//! and edge-field PDE system.
//!
//! The crate provides:
//!
//! * [`grid`]: the [`ImageGrid`] value type with PGM and CSV I/O,
//! * [`stencil`]: Gaussian presmoothing and mirror-boundary finite differences,
//! * [`noise`]: seeded Gamma(L, L) multiplicative speckle,
//! * [`solver`]: the coupled model, stepped explicitly,
//! * [`tdm`]: the single-equation telegraph-diffusion baseline,
//! * [`metrics`]: PSNR and MSSIM.
//!
//! ```
//! use speckle_tde::{noise, phantom, solver, ImageGrid};
//!
//! let clean = phantom::circle_phantom(32, 32, 60.0, 190.0).unwrap();
//! let noisy = noise::apply_speckle(&clean, noise::SpeckleSpec::new(5, 7).unwrap());
//! let stop = solver::StoppingRule::best_psnr(clean.clone(), 300, 20);
//! let (restored, report) = solver::run(&noisy, &solver::ModelParams::default(), &stop).unwrap();
//! assert!(report.final_psnr.unwrap() > speckle_tde::metrics::psnr(&noisy, &clean).unwrap());
//! # let _: ImageGrid = restored;
//! ```

pub mod error;
pub mod grid;
pub mod metrics;
pub mod noise;
pub mod phantom;
pub mod presets;
pub mod report;
pub mod solver;
pub mod stencil;
pub mod tdm;

pub use error::{CsvError, Error, PgmError, Result};
pub use grid::{ImageGrid, PixelRect};
pub use report::{IterationRecord, QualityReport};
