use std::fmt;

use serde::Serialize;

use super::{Fibration, RevolutionSheet, DEFAULT_EPS_SPEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `xi <= 0` somewhere: the curve touches or crosses the rotation axis.
    AxisContact,
    /// Discrete speed below `eps_speed`.
    DegenerateParametrization,
    /// `beta(n_g) > 0` fails on a parallel-circle sheet (`zeta_rho <= 0`).
    OrientationConvention,
    /// Period data inconsistent with the declared fibration.
    FibrationMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Worst sample, when the violation is pointwise.
    pub index: Option<usize>,
    /// Signed distance to the admissible region at the worst sample (negative = violated).
    pub margin: f64,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{} (worst sample {i}, margin {:e})", self.message, self.margin),
            None => write!(f, "{} (margin {:e})", self.message, self.margin),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ValidationConfig {
    pub eps_speed: f64,
    /// Sup-norm below which `zeta_rho` counts as identically zero for meridian sheets.
    pub zero_tolerance: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            eps_speed: DEFAULT_EPS_SPEED,
            zero_tolerance: 1e-12,
        }
    }
}

/// Index and value of the minimum.
fn argmin(values: &[f64]) -> (usize, f64) {
    values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc })
}

pub(super) fn validate(sheet: &RevolutionSheet, config: &ValidationConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    let curve = sheet.curve();

    let (i, min_xi) = argmin(curve.xi());
    if min_xi <= 0.0 {
        out.push(Violation {
            kind: ViolationKind::AxisContact,
            index: Some(i),
            margin: min_xi,
            message: "profile curve touches the rotation axis (xi <= 0)".into(),
        });
    }

    let (i, min_speed) = argmin(&curve.speed());
    if !(min_speed >= config.eps_speed) {
        out.push(Violation {
            kind: ViolationKind::DegenerateParametrization,
            index: Some(i),
            margin: min_speed - config.eps_speed,
            message: "degenerate parametrization (speed below eps_speed)".into(),
        });
    }

    let vort = sheet.vorticity();
    let zeta_rho = vort.zeta_rho();
    match sheet.fibration() {
        Fibration::ParallelCircles => {
            if vort.theta_constant() != 0.0 {
                out.push(Violation {
                    kind: ViolationKind::FibrationMismatch,
                    index: None,
                    margin: -vort.theta_constant().abs(),
                    message: "parallel-circle fibration requires c = 0".into(),
                });
            }
            if !(vort.rho_winding() > 0.0) {
                out.push(Violation {
                    kind: ViolationKind::FibrationMismatch,
                    index: None,
                    margin: vort.rho_winding(),
                    message: "parallel-circle fibration requires winding P > 0".into(),
                });
            }
            let (i, min_zr) = argmin(&zeta_rho);
            if !(min_zr > 0.0) {
                out.push(Violation {
                    kind: ViolationKind::OrientationConvention,
                    index: Some(i),
                    margin: min_zr,
                    message: "orientation convention beta(n_g)>0 violated (zeta_rho <= 0)".into(),
                });
            }
        }
        Fibration::Meridians => {
            if vort.theta_constant() == 0.0 {
                out.push(Violation {
                    kind: ViolationKind::FibrationMismatch,
                    index: None,
                    margin: 0.0,
                    message: "meridian fibration requires c != 0".into(),
                });
            }
            let (i, max_zr) = zeta_rho
                .iter()
                .map(|z| z.abs())
                .enumerate()
                .fold((0, 0.0_f64), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
            if max_zr > config.zero_tolerance {
                out.push(Violation {
                    kind: ViolationKind::FibrationMismatch,
                    index: Some(i),
                    margin: config.zero_tolerance - max_zr,
                    message: "meridian fibration requires zeta_rho = 0".into(),
                });
            }
        }
        Fibration::Custom { m, n } => {
            if vort.rho_winding() == 0.0 && vort.theta_constant() == 0.0 {
                out.push(Violation {
                    kind: ViolationKind::FibrationMismatch,
                    index: None,
                    margin: 0.0,
                    message: format!("R_{{{m},{n}}} sheet has an exact vorticity form"),
                });
            }
            // with c = 0, beta vanishes wherever zeta_rho changes sign
            if vort.theta_constant() == 0.0 {
                let (i, min_zr) = argmin(&zeta_rho);
                let max_zr = zeta_rho.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                if !(min_zr > 0.0 || max_zr < 0.0) {
                    out.push(Violation {
                        kind: ViolationKind::OrientationConvention,
                        index: Some(i),
                        margin: min_zr.abs().min(max_zr.abs()),
                        message: "vorticity form has a zero".into(),
                    });
                }
            }
        }
    }
    out
}
