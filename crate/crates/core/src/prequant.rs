//! Integrality arithmetic for the prequantization condition `a ell in 2 pi Z`.
//!
//! Only the structure-group side is modelled: the circle homomorphism
//! `m_a: R / ell Z -> R / 2 pi Z`, `z -> a z`, its kernel, and the derivative of the flux
//! homomorphism on the isotropy algebra.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::enclosed_volume;
use crate::sheet::RevolutionSheet;
use crate::stationarity::{classify, relative_variation, RATIO_TOLERANCE};

/// Absolute tolerance on the integrality of `a ell / 2 pi`.
pub const TOL_INT: f64 = 1e-9;
/// Relative variation of `beta(v)` tolerated in [`flux_derivative`].
pub const ISOTROPY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrequantReport {
    pub a: f64,
    pub ell: f64,
    pub product_over_2pi: f64,
    pub k: Option<i64>,
    pub prequantizable: bool,
    /// Tolerance used when `ell` was reconstructed from the period ratio.
    pub period_ratio_tolerance: f64,
}

fn nearest_positive_integer(ratio: f64) -> Option<i64> {
    let k = ratio.round();
    ((ratio - k).abs() <= TOL_INT && k >= 1.0).then_some(k as i64)
}

/// Report for given volume `a` and smallest period `ell`.
pub fn onsager_feynman_values(a: f64, ell: f64) -> PrequantReport {
    let product_over_2pi = a * ell / TAU;
    let k = nearest_positive_integer(product_over_2pi);
    PrequantReport {
        a,
        ell,
        product_over_2pi,
        k,
        prequantizable: k.is_some(),
        period_ratio_tolerance: RATIO_TOLERANCE,
    }
}

pub fn onsager_feynman(sheet: &RevolutionSheet) -> Result<PrequantReport> {
    let class = classify(sheet)?;
    Ok(onsager_feynman_values(enclosed_volume(sheet), class.ell))
}

fn integral_order(a: f64, ell: f64) -> Result<i64> {
    let ratio = a * ell / TAU;
    nearest_positive_integer(ratio).ok_or(Error::IllDefinedMap { ratio })
}

/// `m_a(z + ell Z) = a z + 2 pi Z`, reported in `[0, 2 pi)`.
pub fn m_a_map(z: f64, a: f64, ell: f64) -> Result<f64> {
    integral_order(a, ell)?;
    let angle = (a * z.rem_euclid(ell)).rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative products
    Ok(if angle >= TAU { 0.0 } else { angle })
}

/// Distance on the circle `R / 2 pi Z`.
pub fn circle_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

/// The points `j ell / k`, `j = 0..k`, of the kernel of `m_a`.
pub fn kernel_elements(a: f64, ell: f64) -> Result<Vec<f64>> {
    let k = integral_order(a, ell)?;
    Ok((0..k).map(|j| j as f64 * ell / k as f64).collect())
}

/// Order `k = a ell / 2 pi` of the kernel of `m_a`, cross-checked by counting the zeros of
/// `m_a` on a lattice eight times finer than the kernel.
pub fn kernel_order(a: f64, ell: f64) -> Result<i64> {
    const REFINE: i64 = 8;
    let k = integral_order(a, ell)?;
    let points = k * REFINE;
    let mut zeros = 0;
    for j in 0..points {
        let z = j as f64 * ell / points as f64;
        if circle_distance(m_a_map(z, a, ell)?, 0.0) <= 1e-9 {
            zeros += 1;
        }
    }
    if zeros != k {
        return Err(Error::Contract(format!(
            "m_a vanishes at {zeros} lattice points, expected {k}"
        )));
    }
    Ok(k)
}

/// `-beta(v)` for a circle-invariant tangent field `v = v_rho d_rho + v_theta d_theta`
/// preserving `beta`, i.e. with `beta(v)` constant.
pub fn flux_derivative(sheet: &RevolutionSheet, v_rho: &[f64], v_theta: &[f64]) -> Result<f64> {
    let n = sheet.grid().len();
    if v_rho.len() != n || v_theta.len() != n {
        return Err(Error::Contract(format!(
            "vector field has {}/{} samples, sheet has {n}",
            v_rho.len(),
            v_theta.len()
        )));
    }
    let zeta_rho = sheet.vorticity().zeta_rho();
    let c = sheet.vorticity().theta_constant();
    let pairing: Vec<f64> = (0..n).map(|i| zeta_rho[i] * v_rho[i] + c * v_theta[i]).collect();
    // Cancellation between the two terms limits how constant a vanishing pairing can look.
    let scale = (0..n)
        .map(|i| (zeta_rho[i] * v_rho[i]).abs() + (c * v_theta[i]).abs())
        .fold(0.0_f64, f64::max);
    let spread =
        pairing.iter().fold(f64::NEG_INFINITY, |m, &p| m.max(p)) - pairing.iter().fold(f64::INFINITY, |m, &p| m.min(p));
    let variation = relative_variation(&pairing);
    if variation > ISOTROPY_TOLERANCE && spread > 1e-14 * scale {
        return Err(Error::NotInIsotropy {
            relative_variation: variation,
        });
    }
    let mean = pairing.iter().sum::<f64>() / n as f64;
    Ok(0.0 - mean)
}
