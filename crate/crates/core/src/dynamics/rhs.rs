//! Two independent evaluations of the Hamiltonian vector field on parallel-circle sheets.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::fiber_curvature_field;
use crate::sheet::{Fibration, RevolutionSheet, TangentData, DEFAULT_EPS_SPEED};

/// Thresholds below which the right-hand side is declared singular.
#[derive(Debug, Clone, Copy)]
pub struct SingularityGuard {
    pub eps_xi: f64,
    pub eps_speed: f64,
}

impl Default for SingularityGuard {
    fn default() -> Self {
        Self {
            eps_xi: 1e-8,
            eps_speed: DEFAULT_EPS_SPEED,
        }
    }
}

/// Derivative data shared by both right-hand sides.
struct Fields {
    xi_r: Vec<f64>,
    eta_r: Vec<f64>,
    zeta_rho: Vec<f64>,
}

fn singular(sheet: &RevolutionSheet, index: usize, reason: String) -> Error {
    Error::Singularity {
        index,
        rho: sheet.grid().rho(index),
        stage: None,
        reason,
    }
}

fn check_state(sheet: &RevolutionSheet, guard: &SingularityGuard) -> Result<Fields> {
    if sheet.fibration() != Fibration::ParallelCircles {
        return Err(Error::NotImplemented(
            "the flow is implemented on the parallel-circle component R_{1,0} only".into(),
        ));
    }
    let curve = sheet.curve();
    let (xi_r, eta_r) = curve.first_derivatives();
    let zeta_rho = sheet.vorticity().zeta_rho();
    for (i, &xi) in curve.xi().iter().enumerate() {
        if !xi.is_finite() || !curve.eta()[i].is_finite() || !zeta_rho[i].is_finite() {
            return Err(singular(sheet, i, "non-finite state".into()));
        }
        if xi < guard.eps_xi {
            return Err(singular(sheet, i, format!("xi = {xi:e} reached the axis")));
        }
        let s = xi_r[i].hypot(eta_r[i]);
        if !(s >= guard.eps_speed) {
            return Err(singular(sheet, i, format!("speed = {s:e} below eps_speed")));
        }
        if !(zeta_rho[i] > 0.0) {
            return Err(singular(
                sheet,
                i,
                format!("zeta_rho = {:e} is not positive", zeta_rho[i]),
            ));
        }
    }
    Ok(Fields { xi_r, eta_r, zeta_rho })
}

/// Pointwise evaluation of
///
/// ```text
/// xi_t   =  xi_rho eta_rho   / (xi (xi_rho^2 + eta_rho^2))
/// eta_t  = -xi_rho^2         / (xi (xi_rho^2 + eta_rho^2))
/// zeta_t =  eta_rho zeta_rho / (xi (xi_rho^2 + eta_rho^2))
/// ```
///
/// The sign of `zeta_t` is the one under which the volume, the Hamiltonian and the vertical
/// impulse are constants of motion; the opposite sign makes `dh/dt = 4 pi int xi' eta'
/// zeta_rho / (xi s^2)`, which does not vanish for generic profiles.
pub fn rhs_closed_form(sheet: &RevolutionSheet) -> Result<TangentData> {
    rhs_closed_form_with(sheet, &SingularityGuard::default())
}

pub fn rhs_closed_form_with(sheet: &RevolutionSheet, guard: &SingularityGuard) -> Result<TangentData> {
    let f = check_state(sheet, guard)?;
    let xi = sheet.curve().xi();
    let n = xi.len();
    let mut out = TangentData {
        xi_dot: Vec::with_capacity(n),
        eta_dot: Vec::with_capacity(n),
        zeta_dot: Vec::with_capacity(n),
    };
    for (i, &x) in xi.iter().enumerate() {
        let (xr, er) = (f.xi_r[i], f.eta_r[i]);
        let denom = x * (xr * xr + er * er);
        out.xi_dot.push(xr * er / denom);
        out.eta_dot.push(-(xr * xr) / denom);
        out.zeta_dot.push(er * f.zeta_rho[i] / denom);
    }
    Ok(out)
}

/// The vector field assembled from the vortex-line frames.
///
/// Vortex lines move with the binormal velocity `k B = k_g n - k_n n_g`. The profile follows
/// its normal part `k_g` along the plane-curve normal (the horizontal lift, no tangential
/// reparametrization), so the lines slide past the fixed `rho` labels at the rate
/// `-k_n / s` and the potential is carried along: `zeta_t = k_n beta(n_g)`.
pub fn rhs_geometric(sheet: &RevolutionSheet) -> Result<TangentData> {
    rhs_geometric_with(sheet, &SingularityGuard::default(), Exec::Auto)
}

pub fn rhs_geometric_with(sheet: &RevolutionSheet, guard: &SingularityGuard, exec: Exec) -> Result<TangentData> {
    check_state(sheet, guard)?;
    let field = fiber_curvature_field(sheet.curve(), sheet.vorticity(), sheet.normal_orientation(), exec)?;
    let n = field.len();
    let mut out = TangentData {
        xi_dot: Vec::with_capacity(n),
        eta_dot: Vec::with_capacity(n),
        zeta_dot: Vec::with_capacity(n),
    };
    for i in 0..n {
        let normal = field.normal[i];
        out.xi_dot.push(field.k_g[i] * normal.x());
        out.eta_dot.push(field.k_g[i] * normal.z());
        out.zeta_dot.push(field.k_n[i] * field.beta_ng[i]);
    }
    Ok(out)
}
