//! Conserved quantities of circle-invariant sheets.
//!
//! `theta` is integrated out analytically: every integrand below is a trigonometric
//! polynomial of degree at most two in `theta`, so a four-point rule in `theta` is exact
//! and the remaining `rho` integral is a periodic trapezoid sum.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, trapezoid, Vec3};
use crate::sheet::{Fibration, RevolutionSheet};

/// Basis element of se(3): rotation generator `omega` and translation `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twist {
    pub omega: Vec3,
    pub v: Vec3,
}

impl Twist {
    /// The six basis twists in the order `(e1,0), (e2,0), (e3,0), (0,e1), (0,e2), (0,e3)`.
    pub fn basis() -> [Twist; 6] {
        let e = [
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ];
        let zero = Vec3::default();
        [
            Twist { omega: e[0], v: zero },
            Twist { omega: e[1], v: zero },
            Twist { omega: e[2], v: zero },
            Twist { omega: zero, v: e[0] },
            Twist { omega: zero, v: e[1] },
            Twist { omega: zero, v: e[2] },
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableSet {
    #[serde(rename = "a")]
    pub volume_a: f64,
    #[serde(rename = "h")]
    pub hamiltonian_h: f64,
    /// Only defined for parallel-circle sheets.
    #[serde(rename = "k")]
    pub vertical_impulse_k: Option<f64>,
    /// Pairings with [`Twist::basis`].
    #[serde(rename = "J")]
    pub se3_momentum: [f64; 6],
}

impl ObservableSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("observable set serializes")
    }

    pub const CSV_HEADER: &'static str = "a,h,k,J_w1,J_w2,J_w3,J_v1,J_v2,J_v3";

    pub fn to_csv_row(&self) -> String {
        let mut cols = vec![
            crate::io::fmt_f64(self.volume_a),
            crate::io::fmt_f64(self.hamiltonian_h),
            self.vertical_impulse_k.map(crate::io::fmt_f64).unwrap_or_default(),
        ];
        cols.extend(self.se3_momentum.iter().map(|&j| crate::io::fmt_f64(j)));
        cols.join(",")
    }
}

/// Total length of the vortex lines.
///
/// Parallel circles: `h = 2 pi int xi zeta_rho drho`. Meridians: `int_Sigma sigma ^ beta`
/// with the fiber arclength form taken from the curvature field.
pub fn hamiltonian(sheet: &RevolutionSheet) -> Result<f64> {
    match sheet.fibration() {
        Fibration::ParallelCircles => {
            let zeta_rho = sheet.vorticity().zeta_rho();
            let integrand: Vec<f64> = sheet.curve().xi().iter().zip(&zeta_rho).map(|(x, z)| x * z).collect();
            Ok(TAU * trapezoid(&integrand))
        }
        Fibration::Meridians => {
            let field = geometry::curvature_field(sheet)?;
            geometry::wedge_integral(&field.sigma_rho, &field.sigma_theta, sheet)
        }
        Fibration::Custom { m, n } => Err(Error::NotImplemented(format!("Hamiltonian on R_{{{m},{n}}}"))),
    }
}

/// Total area of the disks bounded by the parallel vortex lines, `k = pi int xi^2 zeta_rho drho`.
pub fn vertical_impulse(sheet: &RevolutionSheet) -> Result<f64> {
    if sheet.fibration() != Fibration::ParallelCircles {
        return Err(Error::NotImplemented(
            "vertical impulse is defined for parallel-circle sheets".into(),
        ));
    }
    let zeta_rho = sheet.vorticity().zeta_rho();
    let integrand: Vec<f64> = sheet
        .curve()
        .xi()
        .iter()
        .zip(&zeta_rho)
        .map(|(x, z)| x * x * z)
        .collect();
    Ok(PI * trapezoid(&integrand))
}

/// `<J, (omega, v)> = int_Sigma beta ^ alpha` with the potential
/// `alpha = 1/2 (|x|^2 omega + v x x)^flat`.
///
/// The overall sign is the one for which the `(0, e3)` pairing is the vertical impulse.
pub fn momentum_pairing(sheet: &RevolutionSheet, twist: Twist) -> f64 {
    let curve = sheet.curve();
    let (xi_r, eta_r) = curve.first_derivatives();
    let zeta_rho = sheet.vorticity().zeta_rho();
    let c = sheet.vorticity().theta_constant();
    let thetas = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];

    let integrand: Vec<f64> = (0..curve.xi().len())
        .map(|i| {
            let (xi, eta) = (curve.xi()[i], curve.eta()[i]);
            let mean: f64 = thetas
                .iter()
                .map(|&th| {
                    let (s, co) = th.sin_cos();
                    let x = Vec3::new(xi * co, xi * s, eta);
                    let d_rho = Vec3::new(xi_r[i] * co, xi_r[i] * s, eta_r[i]);
                    let d_theta = Vec3::new(-xi * s, xi * co, 0.0);
                    let u = x.dot(x) * twist.omega + twist.v.cross(x);
                    let a_rho = 0.5 * u.dot(d_rho);
                    let a_theta = 0.5 * u.dot(d_theta);
                    a_rho * c - a_theta * zeta_rho[i]
                })
                .sum::<f64>()
                / thetas.len() as f64;
            mean
        })
        .collect();
    // `+ 0.0` folds negative zeros from exactly cancelling pairings
    -sheet.normal_orientation().sign() * TAU * trapezoid(&integrand) + 0.0
}

pub fn se3_momentum(sheet: &RevolutionSheet) -> [f64; 6] {
    Twist::basis().map(|t| momentum_pairing(sheet, t))
}

pub fn observable_set(sheet: &RevolutionSheet) -> Result<ObservableSet> {
    let vertical_impulse_k = match sheet.fibration() {
        Fibration::ParallelCircles => Some(vertical_impulse(sheet)?),
        _ => None,
    };
    Ok(ObservableSet {
        volume_a: geometry::enclosed_volume(sheet),
        hamiltonian_h: hamiltonian(sheet)?,
        vertical_impulse_k,
        se3_momentum: se3_momentum(sheet),
    })
}
