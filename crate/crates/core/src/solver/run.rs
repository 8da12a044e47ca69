//! Time-stepping driver shared by the proposed model and the TDM baseline.

use std::time::Instant;

use super::params::{EdgeCoupling, ModelParams};
use super::scheme::{diffusivity, edge_step, telegraph_step, TelegraphCoefficients};
use super::state::{SolverState, StopMode, StoppingRule};
use crate::error::{Error, Result};
use crate::grid::ImageGrid;
use crate::metrics::{mse, mssim, psnr, psnr_from_mse};
use crate::report::{IterationRecord, QualityReport};
use crate::stencil::GaussianKernel;

/// Gray level substituted for nonpositive input pixels.
pub const INPUT_FLOOR: f64 = 1e-3;

/// Allowed excursion of any iterate beyond the input's range, in gray levels.
pub const SOFT_BOUND_MARGIN: f64 = 2.0;

/// One explicit step of a telegraph-type scheme.
pub(crate) trait Scheme {
    /// Edge field paired with the initial image.
    fn initial_edge(&self, initial: &ImageGrid) -> ImageGrid;

    /// Returns `(I^{n+1}, u^n)`.
    fn advance(&mut self, state: &SolverState) -> (ImageGrid, ImageGrid);
}

struct Proposed<'a> {
    params: &'a ModelParams,
    kernel: GaussianKernel,
}

impl Scheme for Proposed<'_> {
    fn initial_edge(&self, initial: &ImageGrid) -> ImageGrid {
        super::state::initial_edge_field(initial, &self.kernel)
    }

    fn advance(&mut self, state: &SolverState) -> (ImageGrid, ImageGrid) {
        let p = self.params;
        let (u_next, g) = match p.coupling {
            EdgeCoupling::Fresh => {
                let u = edge_step(&state.i_curr, &state.u_curr, p, &self.kernel);
                let g = diffusivity(&state.i_curr, &u, p, &self.kernel);
                (u, g)
            }
            EdgeCoupling::Lagged => {
                let g = diffusivity(&state.i_curr, &state.u_curr, p, &self.kernel);
                (edge_step(&state.i_curr, &state.u_curr, p, &self.kernel), g)
            }
        };
        let coeffs = TelegraphCoefficients {
            gamma: p.gamma,
            tau: p.tau,
            h_spatial: p.h_spatial,
            divergence: p.divergence,
        };
        (telegraph_step(&state.i_prev, &state.i_curr, &g, coeffs), u_next)
    }
}

/// Despeckles `noisy` with the coupled telegraph-diffusion / edge-field model.
///
/// Starts from `I^0 = I^1 = noisy` and `u^0 = G_xi * |grad I^0|^2`, then per
/// step advances the edge field from `I^n`, forms `g^n` and takes one damped
/// wave step. Iteration `k` of the report is the image after `k` steps.
pub fn run(noisy: &ImageGrid, params: &ModelParams, stop: &StoppingRule) -> Result<(ImageGrid, QualityReport)> {
    params.validate()?;
    let scheme = Proposed {
        params,
        kernel: GaussianKernel::new(params.xi)?,
    };
    drive(noisy, stop, params.intensity_peak, params.to_string(), scheme)
}

/// Replaces nonpositive pixels by [`INPUT_FLOOR`].
pub fn floor_input(noisy: &ImageGrid) -> ImageGrid {
    if noisy.as_slice().iter().all(|&v| v > 0.0) {
        return noisy.clone();
    }
    log::warn!("input has nonpositive pixels; flooring them at {INPUT_FLOOR}");
    let data = noisy.as_slice().iter().map(|&v| v.max(INPUT_FLOOR)).collect();
    ImageGrid::from_raw(noisy.width(), noisy.height(), data)
}

fn scaled(grid: &ImageGrid, factor: f64) -> ImageGrid {
    if factor == 1.0 {
        return grid.clone();
    }
    let data = grid.as_slice().iter().map(|&v| v * factor).collect();
    ImageGrid::from_raw(grid.width(), grid.height(), data)
}

pub(crate) fn drive<S: Scheme>(
    noisy: &ImageGrid,
    stop: &StoppingRule,
    peak: f64,
    params_echo: String,
    mut scheme: S,
) -> Result<(ImageGrid, QualityReport)> {
    stop.validate(noisy)?;
    let started = Instant::now();

    let input = floor_input(noisy);
    let lower = input.min() - SOFT_BOUND_MARGIN;
    let upper = input.max() + SOFT_BOUND_MARGIN;
    let work = scaled(&input, 1.0 / peak);
    let reference = stop.reference.as_ref().map(|r| scaled(r, 1.0 / peak));
    let psnr_of = |grid: &ImageGrid| {
        reference
            .as_ref()
            .map(|r| psnr_from_mse(mse(grid, r).expect("dimensions validated") * peak * peak))
    };

    let mut state = SolverState {
        i_prev: work.clone(),
        i_curr: work.clone(),
        u_curr: scheme.initial_edge(&work),
        iter: 0,
        best_psnr: psnr_of(&work),
        best_iterate: None,
    };
    let mut best_iter = 0;
    let mut stale = 0;
    let mut per_iteration = Vec::new();
    if let Some(p) = state.best_psnr {
        per_iteration.push(IterationRecord { iter: 0, psnr_db: p, mssim: None });
    }
    let (mut iterate_min, mut iterate_max) = (input.min(), input.max());
    let mut bound_violations = 0;

    for k in 1..=stop.max_iters {
        let (next_i, next_u) = scheme.advance(&state);
        if !next_i.is_all_finite() || !next_u.is_all_finite() {
            return Err(Error::Instability { iter: k });
        }
        state.i_prev = std::mem::replace(&mut state.i_curr, next_i);
        state.u_curr = next_u;
        state.iter = k;

        let (lo, hi) = (state.i_curr.min() * peak, state.i_curr.max() * peak);
        iterate_min = iterate_min.min(lo);
        iterate_max = iterate_max.max(hi);
        if lo < lower || hi > upper {
            bound_violations += 1;
            log::warn!("iteration {k}: iterate range [{lo}, {hi}] leaves [{lower}, {upper}]");
        }

        if let Some(p) = psnr_of(&state.i_curr) {
            per_iteration.push(IterationRecord { iter: k, psnr_db: p, mssim: None });
            if stop.mode == StopMode::BestPsnr {
                if state.best_psnr.map_or(true, |b| p > b) {
                    state.best_psnr = Some(p);
                    state.best_iterate = Some(state.i_curr.clone());
                    best_iter = k;
                    stale = 0;
                } else {
                    stale += 1;
                    if stale >= stop.patience {
                        break;
                    }
                }
            }
        }
    }

    let iterations_run = state.iter;
    let output = match stop.mode {
        StopMode::FixedIterations => {
            best_iter = iterations_run;
            if iterations_run == 0 {
                input
            } else {
                scaled(&state.i_curr, peak)
            }
        }
        StopMode::BestPsnr => match state.best_iterate {
            Some(best) => scaled(&best, peak),
            None => input,
        },
    };

    let (final_psnr, final_mssim) = match &stop.reference {
        Some(r) => (Some(psnr(&output, r)?), mssim(&output, r).ok()),
        None => (None, None),
    };
    let report = QualityReport {
        per_iteration,
        final_psnr,
        final_mssim,
        best_iter,
        iterations_run,
        params_echo,
        wall_time: started.elapsed().as_secs_f64(),
        iterate_min,
        iterate_max,
        bound_violations,
    };
    Ok((output, report))
}
