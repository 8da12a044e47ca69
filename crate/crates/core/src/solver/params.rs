use std::fmt;

use crate::error::{Error, Result};

/// Discretization of `div(g grad I)` in the I-update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DivergenceForm {
    /// Half-point fluxes with the arithmetic mean of `g` on each face and no
    /// flux through the image border. Compact five-point stencil.
    #[default]
    ConservativeFlux,
    /// Central difference of `g` times the central gradient, i.e. the nested
    /// composition of two central differences. Five-wide stencil.
    LiteralCentral,
}

/// Which edge field enters the diffusivity of step `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeCoupling {
    /// Advance `u^{n-1} -> u^n` from `I^n` first, then build `g^n` from `u^n`.
    #[default]
    Fresh,
    /// Build `g^n` from `u^{n-1}`, then advance the edge field.
    Lagged,
}

/// Constants of the coupled telegraph-diffusion / edge-field model.
///
/// `epsilon` and `cap_k` live in the solver's working units, where intensities
/// are divided by `intensity_peak`; with the default peak of 255 a gray level
/// of 255 maps to 1 and `cap_k = 1` is the squared maximum gray level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Damping of the telegraph equation.
    pub gamma: f64,
    /// Exponent of the relative-contrast factor, at least 1.
    pub alpha: f64,
    /// Exponent of the edge-field damping, at least 1.
    pub beta: f64,
    /// Weight of the edge-field damping.
    pub iota: f64,
    /// Diffusion scale of the edge-field equation.
    pub nu: f64,
    /// Standard deviation of the presmoothing Gaussian, in pixels.
    pub xi: f64,
    /// Floor of the edge source `h`.
    pub epsilon: f64,
    /// Saturation of the squared gradient in the edge source `h`.
    pub cap_k: f64,
    /// Time step.
    pub tau: f64,
    /// Spatial step. The stencils assume 1.
    pub h_spatial: f64,
    /// Gray level that maps to 1 in working units.
    pub intensity_peak: f64,
    pub divergence: DivergenceForm,
    pub coupling: EdgeCoupling,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            gamma: 2.0,
            alpha: 1.7,
            beta: 2.2,
            iota: 2.0,
            nu: 0.1,
            xi: 1.0,
            epsilon: 1e-4,
            cap_k: 1.0,
            tau: 0.2,
            h_spatial: 1.0,
            intensity_peak: 255.0,
            divergence: DivergenceForm::ConservativeFlux,
            coupling: EdgeCoupling::Fresh,
        }
    }
}

pub(crate) fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be positive and finite, got {v}")))
    }
}

pub(crate) fn at_least_one(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 1.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("must be at least 1, got {v}")))
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        positive("gamma", self.gamma)?;
        at_least_one("alpha", self.alpha)?;
        at_least_one("beta", self.beta)?;
        positive("iota", self.iota)?;
        positive("nu", self.nu)?;
        positive("xi", self.xi)?;
        positive("epsilon", self.epsilon)?;
        positive("capK", self.cap_k)?;
        positive("tau", self.tau)?;
        positive("h_spatial", self.h_spatial)?;
        positive("intensity_peak", self.intensity_peak)?;
        let bound = self.tau * (1.0 + 2.0 * self.nu * self.nu / (self.h_spatial * self.h_spatial));
        if bound >= 2.0 {
            return Err(Error::param(
                "tau",
                format!("tau * (1 + 2 nu^2 / h^2) = {bound} violates the stability bound 2"),
            ));
        }
        Ok(())
    }

    /// `true` when the explicit edge-field update keeps `u` nonnegative.
    pub fn edge_update_is_monotone(&self) -> bool {
        1.0 - self.tau - 2.0 * self.tau * self.nu * self.nu / (self.h_spatial * self.h_spatial) > 0.0
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "model=proposed gamma={} alpha={} beta={} iota={} nu={} xi={} epsilon={} capK={} tau={} h={} peak={} divergence={:?} coupling={:?}",
            self.gamma,
            self.alpha,
            self.beta,
            self.iota,
            self.nu,
            self.xi,
            self.epsilon,
            self.cap_k,
            self.tau,
            self.h_spatial,
            self.intensity_peak,
            self.divergence,
            self.coupling
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_and_monotone() {
        let p = ModelParams::default();
        p.validate().unwrap();
        assert!(p.edge_update_is_monotone());
    }

    #[test]
    fn rejects_out_of_range() {
        let cases: [fn(&mut ModelParams); 7] = [
            |p| p.alpha = 0.9,
            |p| p.beta = f64::NAN,
            |p| p.gamma = 0.0,
            |p| p.tau = -0.1,
            |p| p.iota = f64::INFINITY,
            |p| p.tau = 1.99,
            |p| {
                p.tau = 1.0;
                p.nu = 1.0
            },
        ];
        for mutate in cases {
            let mut p = ModelParams::default();
            mutate(&mut p);
            assert!(p.validate().is_err(), "{p}");
        }
    }
}
