use crate::error::{Error, Result};
use crate::grid::ImageGrid;
use crate::stencil::{convolve, grad_central, GaussianKernel};

/// Time-stepping state entering one step of the coupled scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverState {
    /// `I^{n-1}`.
    pub i_prev: ImageGrid,
    /// `I^n`.
    pub i_curr: ImageGrid,
    /// `u^{n-1}`.
    pub u_curr: ImageGrid,
    pub iter: usize,
    pub best_psnr: Option<f64>,
    pub best_iterate: Option<ImageGrid>,
}

impl SolverState {
    /// `I^0 = I^1 = initial` (zero initial velocity) and
    /// `u^0 = G_xi * |grad I^0|^2`.
    pub fn initial(initial: &ImageGrid, kernel: &GaussianKernel) -> Self {
        Self {
            i_prev: initial.clone(),
            i_curr: initial.clone(),
            u_curr: initial_edge_field(initial, kernel),
            iter: 0,
            best_psnr: None,
            best_iterate: None,
        }
    }

    pub fn check_consistent(&self) -> Result<()> {
        self.i_prev.ensure_same_dims(&self.i_curr)?;
        self.i_prev.ensure_same_dims(&self.u_curr)?;
        if self.iter == 0 && self.i_prev != self.i_curr {
            return Err(Error::param("state", "iteration 0 requires I^{n-1} == I^n"));
        }
        Ok(())
    }
}

/// `G_xi * |grad I|^2` with central differences.
pub fn initial_edge_field(image: &ImageGrid, kernel: &GaussianKernel) -> ImageGrid {
    let (gx, gy) = grad_central(image);
    let sq: Vec<f64> = gx
        .as_slice()
        .iter()
        .zip(gy.as_slice())
        .map(|(a, b)| a * a + b * b)
        .collect();
    convolve(&ImageGrid::from_raw(image.width(), image.height(), sq), kernel)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopMode {
    /// Run exactly `max_iters` steps and return the last iterate.
    FixedIterations,
    /// Return the iterate with the highest PSNR against the reference.
    BestPsnr,
}

/// When to stop iterating and which iterate to return.
#[derive(Debug, Clone, PartialEq)]
pub struct StoppingRule {
    pub mode: StopMode,
    pub max_iters: usize,
    /// Consecutive non-improving steps tolerated in [`StopMode::BestPsnr`].
    pub patience: usize,
    /// Clean image. Required for best-PSNR tracking; optional otherwise, in
    /// which case PSNR is still traced.
    pub reference: Option<ImageGrid>,
}

pub const DEFAULT_PATIENCE: usize = 20;

impl StoppingRule {
    pub fn fixed(max_iters: usize) -> Self {
        Self {
            mode: StopMode::FixedIterations,
            max_iters,
            patience: DEFAULT_PATIENCE,
            reference: None,
        }
    }

    pub fn best_psnr(reference: ImageGrid, max_iters: usize, patience: usize) -> Self {
        Self {
            mode: StopMode::BestPsnr,
            max_iters,
            patience,
            reference: Some(reference),
        }
    }

    pub fn with_reference(mut self, reference: ImageGrid) -> Self {
        self.reference = Some(reference);
        self
    }

    pub fn validate(&self, input: &ImageGrid) -> Result<()> {
        if let Some(r) = &self.reference {
            input.ensure_same_dims(r)?;
        }
        if self.mode == StopMode::BestPsnr {
            if self.reference.is_none() {
                return Err(Error::param("stop", "best-PSNR tracking needs a reference image"));
            }
            if self.patience == 0 {
                return Err(Error::param("patience", "must be at least 1"));
            }
        }
        Ok(())
    }
}
