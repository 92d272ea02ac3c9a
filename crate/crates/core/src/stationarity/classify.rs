use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sheet::RevolutionSheet;

/// Largest denominator tried when reconstructing the period ratio.
pub const DENOMINATOR_CAP: i64 = 64;
/// Accepted error of the reconstructed ratio, taken relative to the larger period.
pub const RATIO_TOLERANCE: f64 = 1e-9;

/// Component `R_{m,n}` of a sheet: `P = m ell` and `2 pi c = n ell` with `gcd(m, n) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub m: i64,
    pub n: i64,
    pub ell: f64,
}

/// Best continued-fraction convergent `p/q` of `x` with `q <= cap` and `|x - p/q| <= tol`.
fn reconstruct(x: f64, cap: i64, tol: f64) -> Option<(i64, i64)> {
    let (mut p0, mut q0, mut p1, mut q1) = (0_i64, 1_i64, 1_i64, 0_i64);
    let mut rest = x;
    loop {
        let a = rest.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let (p, q) = (a * p1 + p0, a * q1 + q0);
        if q > cap {
            return None;
        }
        if (x - p as f64 / q as f64).abs() <= tol {
            return Some((p, q));
        }
        (p0, q0, p1, q1) = (p1, q1, p, q);
        let frac = rest - a as f64;
        if frac == 0.0 {
            return None;
        }
        rest = 1.0 / frac;
    }
}

/// Classifies the period pair `(P, 2 pi c)` of `zeta_rho drho + c dtheta`.
pub fn classify_periods(winding: f64, theta_period: f64) -> Result<Classification> {
    let non_discrete = || Error::NonDiscretePeriods { winding, theta_period };
    if !winding.is_finite() || !theta_period.is_finite() {
        return Err(non_discrete());
    }
    if winding == 0.0 && theta_period == 0.0 {
        return Err(Error::Geometry(
            "both periods vanish: the vorticity form is exact and has no smallest period".into(),
        ));
    }
    // Divide by the larger period so the ratio lies in [-1, 1].
    let swap = winding.abs() < theta_period.abs();
    let (small, large) = if swap {
        (winding, theta_period)
    } else {
        (theta_period, winding)
    };
    let (p, q) = reconstruct(small / large, DENOMINATOR_CAP, RATIO_TOLERANCE).ok_or_else(non_discrete)?;
    let (mut m, mut n) = if swap { (p, q) } else { (q, p) };
    let mut ell = (m as f64 * winding + n as f64 * theta_period) / ((m * m + n * n) as f64);
    if ell < 0.0 {
        (m, n, ell) = (-m, -n, -ell);
    }
    Ok(Classification { m, n, ell })
}

pub fn classify(sheet: &RevolutionSheet) -> Result<Classification> {
    sheet.ensure_valid()?;
    let v = sheet.vorticity();
    classify_periods(v.rho_winding(), TAU * v.theta_constant())
}
