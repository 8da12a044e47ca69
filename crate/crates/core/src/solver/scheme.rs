//! Single-step operators of the explicit scheme.

use rayon::prelude::*;

use super::params::{DivergenceForm, ModelParams};
use super::state::SolverState;
use crate::grid::ImageGrid;
use crate::stencil::{convolve, grad_central, grad_magnitude, laplacian, GaussianKernel};

/// Edge source `h(theta) = epsilon + min(theta^2, K)`.
///
/// Panics if `theta` is negative or NaN.
#[inline]
pub fn edge_source_h(theta: f64, params: &ModelParams) -> f64 {
    assert!(theta >= 0.0, "edge_source_h: theta must be nonnegative, got {theta}");
    params.epsilon + (theta * theta).min(params.cap_k)
}

/// `s = |I_xi| / max |I_xi|`, identically 0 when the maximum is 0.
pub fn relative_contrast_s(i_curr: &ImageGrid, params: &ModelParams) -> crate::Result<ImageGrid> {
    let kernel = GaussianKernel::new(params.xi)?;
    Ok(relative_contrast(&convolve(i_curr, &kernel)))
}

/// Relative contrast of an already smoothed image.
pub(crate) fn relative_contrast(smoothed: &ImageGrid) -> ImageGrid {
    // Sequential max keeps the reduction order fixed.
    let m = smoothed.as_slice().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let data = if m > 0.0 {
        smoothed.as_slice().iter().map(|v| (v.abs() / m).min(1.0)).collect()
    } else {
        vec![0.0; smoothed.len()]
    };
    ImageGrid::from_raw(smoothed.width(), smoothed.height(), data)
}

/// `g = s^alpha / (1 + s^alpha) * 1 / (1 + iota |G_xi * u|^beta)`, in `[0, 1/2]`.
pub fn diffusivity_g(
    i_curr: &ImageGrid,
    u_curr: &ImageGrid,
    params: &ModelParams,
) -> crate::Result<ImageGrid> {
    i_curr.ensure_same_dims(u_curr)?;
    let kernel = GaussianKernel::new(params.xi)?;
    Ok(diffusivity(i_curr, u_curr, params, &kernel))
}

pub(crate) fn diffusivity(
    i_curr: &ImageGrid,
    u_curr: &ImageGrid,
    params: &ModelParams,
    kernel: &GaussianKernel,
) -> ImageGrid {
    let s = relative_contrast(&convolve(i_curr, kernel));
    let u_smooth = convolve(u_curr, kernel);
    let data = s
        .as_slice()
        .iter()
        .zip(u_smooth.as_slice())
        .map(|(&s, &u)| {
            let sa = s.powf(params.alpha);
            (sa / (1.0 + sa)) / (1.0 + params.iota * u.abs().powf(params.beta))
        })
        .collect();
    ImageGrid::from_raw(i_curr.width(), i_curr.height(), data)
}

/// Advances the edge field: `u^n = u^{n-1} + tau (h^n - u^{n-1} + nu^2/2 lap u^{n-1})`
/// with `h^n = h(|grad(G_xi * I^n)|)`.
pub fn step_u(state: &SolverState, params: &ModelParams) -> crate::Result<ImageGrid> {
    state.check_consistent()?;
    let kernel = GaussianKernel::new(params.xi)?;
    Ok(edge_step(&state.i_curr, &state.u_curr, params, &kernel))
}

pub(crate) fn edge_step(
    i_curr: &ImageGrid,
    u_prev: &ImageGrid,
    params: &ModelParams,
    kernel: &GaussianKernel,
) -> ImageGrid {
    let hs = params.h_spatial;
    let (gx, gy) = grad_central(&convolve(i_curr, kernel));
    let theta = grad_magnitude(&gx, &gy).expect("gradient components share dimensions");
    let lap = laplacian(u_prev);
    let half_nu2 = 0.5 * params.nu * params.nu / (hs * hs);
    let data = theta
        .as_slice()
        .iter()
        .zip(u_prev.as_slice())
        .zip(lap.as_slice())
        .map(|((&t, &u), &l)| u + params.tau * (edge_source_h(t / hs, params) - u + half_nu2 * l))
        .collect();
    ImageGrid::from_raw(i_curr.width(), i_curr.height(), data)
}

/// One telegraph step,
/// `(1 + gamma tau) I^{n+1} = (2 + gamma tau) I^n - I^{n-1} + tau^2 div(g grad I^n)`.
pub fn step_i(state: &SolverState, g_field: &ImageGrid, params: &ModelParams) -> crate::Result<ImageGrid> {
    state.check_consistent()?;
    state.i_curr.ensure_same_dims(g_field)?;
    Ok(telegraph_step(
        &state.i_prev,
        &state.i_curr,
        g_field,
        TelegraphCoefficients {
            gamma: params.gamma,
            tau: params.tau,
            h_spatial: params.h_spatial,
            divergence: params.divergence,
        },
    ))
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct TelegraphCoefficients {
    pub gamma: f64,
    pub tau: f64,
    pub h_spatial: f64,
    pub divergence: DivergenceForm,
}

/// Written as `I^n + ((I^n - I^{n-1}) + tau^2 div) / (1 + gamma tau)`, which is
/// algebraically the damped-wave update and leaves constants bit-exact.
pub(crate) fn telegraph_step(
    i_prev: &ImageGrid,
    i_curr: &ImageGrid,
    g: &ImageGrid,
    c: TelegraphCoefficients,
) -> ImageGrid {
    let div = match c.divergence {
        DivergenceForm::ConservativeFlux => flux_divergence(i_curr, g),
        DivergenceForm::LiteralCentral => nested_central_divergence(i_curr, g),
    };
    let tau2 = c.tau * c.tau / (c.h_spatial * c.h_spatial);
    let denom = 1.0 + c.gamma * c.tau;
    let data = i_curr
        .as_slice()
        .iter()
        .zip(i_prev.as_slice())
        .zip(div.as_slice())
        .map(|((&cur, &prev), &d)| cur + ((cur - prev) + tau2 * d) / denom)
        .collect();
    ImageGrid::from_raw(i_curr.width(), i_curr.height(), data)
}

/// `sum over faces of mean(g) * jump(I)`, zero flux through the border.
pub(crate) fn flux_divergence(image: &ImageGrid, g: &ImageGrid) -> ImageGrid {
    let (w, h) = image.dims();
    let v = image.as_slice();
    let gv = g.as_slice();
    let mut out = vec![0.0; w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(y, row)| {
        for (x, cell) in row.iter_mut().enumerate() {
            let k = y * w + x;
            let c = v[k];
            let gc = gv[k];
            let mut acc = 0.0;
            if x + 1 < w {
                acc += 0.5 * (gc + gv[k + 1]) * (v[k + 1] - c);
            }
            if x > 0 {
                acc -= 0.5 * (gv[k - 1] + gc) * (c - v[k - 1]);
            }
            if y + 1 < h {
                acc += 0.5 * (gc + gv[k + w]) * (v[k + w] - c);
            }
            if y > 0 {
                acc -= 0.5 * (gv[k - w] + gc) * (c - v[k - w]);
            }
            *cell = acc;
        }
    });
    ImageGrid::from_raw(w, h, out)
}

/// `D_x(g D_x I) + D_y(g D_y I)` with central `D` and mirror ghost cells on
/// both `I` and the products.
pub(crate) fn nested_central_divergence(image: &ImageGrid, g: &ImageGrid) -> ImageGrid {
    let (gx, gy) = grad_central(image);
    let (w, h) = image.dims();
    let mul = |a: &ImageGrid| {
        let data = a.as_slice().iter().zip(g.as_slice()).map(|(p, q)| p * q).collect();
        ImageGrid::from_raw(w, h, data)
    };
    let (dqx, _) = grad_central(&mul(&gx));
    let (_, dqy) = grad_central(&mul(&gy));
    let data = dqx.as_slice().iter().zip(dqy.as_slice()).map(|(a, b)| a + b).collect();
    ImageGrid::from_raw(w, h, data)
}
