//! Single-equation telegraph-diffusion baseline (TDM).
//!
//! Same damped wave update as the proposed model, with the diffusivity
//! `g = 2 |I_xi|^nu / (M^nu + |I_xi|^nu) * 1 / (1 + (|grad I_xi| / K)^2)`
//! and no edge field.

use std::fmt;

use crate::error::Result;
use crate::grid::ImageGrid;
use crate::solver::{
    at_least_one, drive, positive, relative_contrast, telegraph_step, DivergenceForm, Scheme, SolverState,
    StoppingRule, TelegraphCoefficients,
};
use crate::stencil::{convolve, grad_central, GaussianKernel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TdmParams {
    pub gamma: f64,
    /// Exponent of the contrast factor, at least 1.
    pub nu_exp: f64,
    /// Gradient threshold, in working units (gray level / `intensity_peak`).
    pub k_thresh: f64,
    pub xi: f64,
    pub tau: f64,
    pub h_spatial: f64,
    pub intensity_peak: f64,
    pub divergence: DivergenceForm,
}

impl Default for TdmParams {
    fn default() -> Self {
        Self {
            gamma: 5.0,
            nu_exp: 1.0,
            k_thresh: 1.0,
            xi: 1.0,
            tau: 0.2,
            h_spatial: 1.0,
            intensity_peak: 255.0,
            divergence: DivergenceForm::ConservativeFlux,
        }
    }
}

impl TdmParams {
    pub fn validate(&self) -> Result<()> {
        positive("gamma", self.gamma)?;
        at_least_one("nu", self.nu_exp)?;
        positive("capK", self.k_thresh)?;
        positive("xi", self.xi)?;
        positive("tau", self.tau)?;
        positive("h_spatial", self.h_spatial)?;
        positive("intensity_peak", self.intensity_peak)
    }
}

impl fmt::Display for TdmParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "model=tdm gamma={} nu={} capK={} xi={} tau={} h={} peak={} divergence={:?}",
            self.gamma,
            self.nu_exp,
            self.k_thresh,
            self.xi,
            self.tau,
            self.h_spatial,
            self.intensity_peak,
            self.divergence
        )
    }
}

/// TDM diffusivity, in `[0, 1]`; identically 0 for an all-zero image.
pub fn tdm_diffusivity(i_curr: &ImageGrid, params: &TdmParams) -> Result<ImageGrid> {
    let kernel = GaussianKernel::new(params.xi)?;
    Ok(diffusivity(i_curr, params, &kernel))
}

fn diffusivity(i_curr: &ImageGrid, params: &TdmParams, kernel: &GaussianKernel) -> ImageGrid {
    let smoothed = convolve(i_curr, kernel);
    let s = relative_contrast(&smoothed);
    let (gx, gy) = grad_central(&smoothed);
    let scale = 1.0 / (params.h_spatial * params.k_thresh);
    let data = s
        .as_slice()
        .iter()
        .zip(gx.as_slice().iter().zip(gy.as_slice()))
        .map(|(&s, (&dx, &dy))| {
            // 2 |I|^nu / (M^nu + |I|^nu) with numerator and denominator divided by M^nu.
            let sn = s.powf(params.nu_exp);
            let contrast = 2.0 * sn / (1.0 + sn);
            let r2 = (dx * dx + dy * dy) * scale * scale;
            contrast / (1.0 + r2)
        })
        .collect();
    ImageGrid::from_raw(i_curr.width(), i_curr.height(), data)
}

struct Tdm<'a> {
    params: &'a TdmParams,
    kernel: GaussianKernel,
}

impl Scheme for Tdm<'_> {
    fn initial_edge(&self, initial: &ImageGrid) -> ImageGrid {
        // No edge field; keep a zero placeholder in the shared state.
        ImageGrid::filled(initial.width(), initial.height(), 0.0).expect("dimensions come from a valid grid")
    }

    fn advance(&mut self, state: &SolverState) -> (ImageGrid, ImageGrid) {
        let p = self.params;
        let g = diffusivity(&state.i_curr, p, &self.kernel);
        let coeffs = TelegraphCoefficients {
            gamma: p.gamma,
            tau: p.tau,
            h_spatial: p.h_spatial,
            divergence: p.divergence,
        };
        (
            telegraph_step(&state.i_prev, &state.i_curr, &g, coeffs),
            state.u_curr.clone(),
        )
    }
}

/// Runs the TDM baseline with the same driver, initial and stopping rules as
/// [`crate::solver::run`].
pub fn run_tdm(noisy: &ImageGrid, params: &TdmParams, stop: &StoppingRule) -> Result<(ImageGrid, crate::QualityReport)> {
    params.validate()?;
    let scheme = Tdm {
        params,
        kernel: GaussianKernel::new(params.xi)?,
    };
    drive(noisy, stop, params.intensity_peak, params.to_string(), scheme)
}
