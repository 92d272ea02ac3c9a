//! Stationarity test for circle-invariant sheets.
//!
//! A sheet is a stationary point of the flow exactly when every vortex line is a geodesic
//! (`k_g = 0`) and the function `k_n beta(n_g)` is constant along the sheet.
//!
//! Frame tables (vectors at `theta = 0`, `s = |curve'|`):
//!
//! | fibration | `n`     | `T`              | `k_n`                | `k_g`          | `beta(n_g)` |
//! |-----------|---------|------------------|----------------------|----------------|-------------|
//! | parallel  | inward  | `-e_theta`       | `eta'/(xi s)`        | `-xi'/(xi s)`  | `zeta_rho/s`|
//! | meridian  | outward | `-d_rho / s`     | profile curvature < 0 | `0`            | `c/xi`      |
//!
//! `kbB_field` holds `k_n beta(n_g)`. Since `k B = k_g n - k_n n_g`, this is minus the
//! pairing of `beta` with the tangential part of `k B`; only its constancy matters.

mod classify;

use serde::{Deserialize, Serialize};

pub use classify::{classify, classify_periods, Classification, DENOMINATOR_CAP, RATIO_TOLERANCE};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{curvature_field, fiber_curvature_field, CurvatureField};
use crate::sheet::{NormalOrientation, ProfileCurve, RevolutionSheet, VorticityProfile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StationarityTolerances {
    /// Bound on `sup |k_g|`.
    pub geodesic: f64,
    /// Bound on the relative variation of `k_n beta(n_g)`.
    pub constancy: f64,
}

impl Default for StationarityTolerances {
    fn default() -> Self {
        Self {
            geodesic: 1e-10,
            constancy: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StationarityReport {
    pub max_abs_kg: f64,
    #[serde(rename = "kbB_field")]
    pub kbb_field: Vec<f64>,
    #[serde(rename = "kbB_relative_variation")]
    pub kbb_relative_variation: f64,
    pub is_stationary: bool,
}

/// `(max - min) / max |.|`, or zero for an identically vanishing field.
pub fn relative_variation(values: &[f64]) -> f64 {
    let (lo, hi, mag) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY, 0.0_f64), |(lo, hi, mag), &v| {
            (lo.min(v), hi.max(v), mag.max(v.abs()))
        });
    if mag == 0.0 {
        0.0
    } else {
        (hi - lo) / mag
    }
}

pub fn report_from_field(field: &CurvatureField, tol: &StationarityTolerances) -> StationarityReport {
    let max_abs_kg = field.k_g.iter().fold(0.0_f64, |m, k| m.max(k.abs()));
    let kbb_field = field.kn_beta_ng();
    let kbb_relative_variation = relative_variation(&kbb_field);
    StationarityReport {
        max_abs_kg,
        is_stationary: max_abs_kg <= tol.geodesic && kbb_relative_variation <= tol.constancy,
        kbb_field,
        kbb_relative_variation,
    }
}

pub fn stationarity_report(sheet: &RevolutionSheet) -> Result<StationarityReport> {
    stationarity_report_with(sheet, &StationarityTolerances::default())
}

pub fn stationarity_report_with(sheet: &RevolutionSheet, tol: &StationarityTolerances) -> Result<StationarityReport> {
    Ok(report_from_field(&curvature_field(sheet)?, tol))
}

/// The Clairaut form `zeta_rho = -c kappa s / (xi sqrt(xi^2 - kappa^2))` whose `(c, -zeta_rho)`
/// fibers are geodesics of the surface with Clairaut constant `kappa`.
pub fn geodesic_fibration_form(curve: &ProfileCurve, c: f64, kappa: f64) -> Result<VorticityProfile> {
    let min_xi = curve.xi().iter().copied().fold(f64::INFINITY, f64::min);
    if !(min_xi > kappa.abs()) {
        return Err(Error::ClairautViolation {
            min_xi,
            kappa: kappa.abs(),
        });
    }
    if c == 0.0 {
        return Err(Error::DivisionByZero(
            "a geodesic fibration needs a nonzero dtheta coefficient".into(),
        ));
    }
    let speed = curve.speed();
    let zeta_rho: Vec<f64> = curve
        .xi()
        .iter()
        .zip(&speed)
        .map(|(&xi, &s)| -c * kappa * s / (xi * (xi * xi - kappa * kappa).sqrt()))
        .collect();
    VorticityProfile::from_zeta_rho(curve.grid(), &zeta_rho, c)
}

/// Stationarity report of the geodesic fibration with constants `(c, kappa)` on `curve`,
/// computed with the inward normal.
pub fn geodesic_fibration_report(
    curve: &ProfileCurve,
    c: f64,
    kappa: f64,
    tol: &StationarityTolerances,
) -> Result<StationarityReport> {
    let vorticity = geodesic_fibration_form(curve, c, kappa)?;
    let field = fiber_curvature_field(curve, &vorticity, NormalOrientation::Inward, Exec::Sequential)?;
    Ok(report_from_field(&field, tol))
}

/// Closed-form `k_n beta(n_g)` for `beta = zeta_rho drho + c dtheta`, `c != 0`, relative
/// to the inward normal:
///
/// ```text
/// |c| / (s^2 xi sqrt(s^2 + xi^2 zeta_rho^2 / c^2)) * (eta'' xi' - eta' xi'' + xi eta' zeta_rho^2 / c^2)
/// ```
///
/// The product is even in `beta`: flipping `beta` reverses `T` and `n_g` together.
pub fn kn_betang_closed_form(curve: &ProfileCurve, zeta_rho: &[f64], c: f64) -> Result<Vec<f64>> {
    if c == 0.0 {
        return Err(Error::DivisionByZero(
            "closed form needs c != 0; use the parallel-circle curvature field".into(),
        ));
    }
    if zeta_rho.len() != curve.xi().len() {
        return Err(Error::Contract(format!(
            "zeta_rho has {} samples, curve has {}",
            zeta_rho.len(),
            curve.xi().len()
        )));
    }
    let d = curve.derivatives();
    Ok((0..zeta_rho.len())
        .map(|i| {
            let xi = curve.xi()[i];
            let s2 = d.speed[i] * d.speed[i];
            let q = xi * xi * zeta_rho[i] * zeta_rho[i] / (c * c);
            let bracket = d.eta_rr[i] * d.xi_r[i] - d.eta_r[i] * d.xi_rr[i]
                + xi * d.eta_r[i] * zeta_rho[i] * zeta_rho[i] / (c * c);
            c.abs() / (s2 * xi * (s2 + q).sqrt()) * bracket
        })
        .collect())
}
