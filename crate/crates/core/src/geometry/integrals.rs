use std::f64::consts::{PI, TAU};

use super::frames::CurvatureField;
use super::spectral::trapezoid;
use crate::error::{Error, Result};
use crate::sheet::RevolutionSheet;

/// Volume enclosed by the sheet, `a = pi int xi^2 eta_rho drho`.
///
/// The sign follows the parametrization: positive for the standard torus presets and
/// flipped by `eta -> -eta`.
pub fn enclosed_volume(sheet: &RevolutionSheet) -> f64 {
    let curve = sheet.curve();
    let (_, eta_r) = curve.first_derivatives();
    let integrand: Vec<f64> = curve.xi().iter().zip(&eta_r).map(|(x, e)| x * x * e).collect();
    PI * trapezoid(&integrand)
}

/// `int_Sigma alpha ^ beta` for a circle-invariant 1-form `alpha = alpha_rho drho + alpha_theta dtheta`.
///
/// `alpha ^ beta = (alpha_rho c - alpha_theta zeta_rho) drho ^ dtheta`, integrated over
/// `Sigma` with the orientation of `mu_Sigma = i_n mu`: `drho ^ dtheta` is positive for the
/// inward normal and negative for the outward one. With `alpha = sigma` this is the
/// Hamiltonian.
pub fn wedge_integral(alpha_rho: &[f64], alpha_theta: &[f64], sheet: &RevolutionSheet) -> Result<f64> {
    let n = sheet.grid().len();
    if alpha_rho.len() != n || alpha_theta.len() != n {
        return Err(Error::Contract(format!(
            "alpha components have {} and {} samples, grid has {n}",
            alpha_rho.len(),
            alpha_theta.len()
        )));
    }
    let vort = sheet.vorticity();
    let c = vort.theta_constant();
    let zeta_rho = vort.zeta_rho();
    let integrand: Vec<f64> = (0..n)
        .map(|i| alpha_rho[i] * c - alpha_theta[i] * zeta_rho[i])
        .collect();
    Ok(sheet.normal_orientation().sign() * TAU * trapezoid(&integrand))
}

/// `int_Sigma k_g mu_Sigma = 2 pi int k_g xi s drho`, which vanishes because `k_g` is the
/// divergence of `-n_g`.
pub fn total_geodesic_curvature(sheet: &RevolutionSheet, field: &CurvatureField) -> f64 {
    let curve = sheet.curve();
    let speed = curve.speed();
    let integrand: Vec<f64> = (0..field.len())
        .map(|i| field.k_g[i] * curve.xi()[i] * speed[i])
        .collect();
    TAU * trapezoid(&integrand)
}
