//! Darboux and Frenet frames of the vortex lines.
//!
//! By circle invariance every field is a function of `rho` alone; vectors are reported in
//! the meridian half-plane `theta = 0`, where the local basis `(e_r, e_theta, e_z)` is the
//! standard basis of R^3. At other angles they are rotated about `e_3`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::sheet::{Fibration, Grid, NormalOrientation, ProfileCurve, RevolutionSheet, VorticityProfile};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self([x, y, z])
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn x(self) -> f64 {
        self.0[0]
    }

    pub fn y(self) -> f64 {
        self.0[1]
    }

    pub fn z(self) -> f64 {
        self.0[2]
    }

    pub fn max_abs(self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        Vec3([self * v.0[0], self * v.0[1], self * v.0[2]])
    }
}

/// Frames and curvatures of the vortex lines through each `rho` sample.
///
/// Conventions: `n` is the sheet's unit normal (`i_n mu = mu_Sigma`), the lines are
/// oriented so that `beta(n_g) > 0`, `n_g = n x T`, and `B = T x N`.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureField {
    pub grid: Grid,
    pub tangent: Vec<Vec3>,
    pub geodesic_normal: Vec<Vec3>,
    pub normal: Vec<Vec3>,
    pub principal_normal: Vec<Vec3>,
    pub binormal: Vec<Vec3>,
    /// Curvature `k >= 0` of the vortex line in R^3.
    pub k: Vec<f64>,
    pub k_n: Vec<f64>,
    pub k_g: Vec<f64>,
    /// `beta(n_g) = |gamma_Sigma|`.
    pub beta_ng: Vec<f64>,
    /// Pullback of the fiber arclength form `sigma = T^flat`: `sigma_rho drho + sigma_theta dtheta`.
    pub sigma_rho: Vec<f64>,
    pub sigma_theta: Vec<f64>,
}

impl CurvatureField {
    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// Pointwise `k_n * beta(n_g)`; its differential drives the vorticity in the Hamiltonian flow.
    pub fn kn_beta_ng(&self) -> Vec<f64> {
        self.k_n.iter().zip(&self.beta_ng).map(|(a, b)| a * b).collect()
    }

    /// Pointwise `beta(B)`-weighted curvature `k * beta(B^T)` using the tangential part of `B`.
    pub fn k_beta_binormal(&self, curve: &ProfileCurve, vorticity: &VorticityProfile) -> Vec<f64> {
        let (xi_r, eta_r) = curve.first_derivatives();
        let zeta_rho = vorticity.zeta_rho();
        let c = vorticity.theta_constant();
        (0..self.len())
            .map(|i| {
                let pair = CoordinatePairing {
                    xi: curve.xi()[i],
                    xi_r: xi_r[i],
                    eta_r: eta_r[i],
                };
                self.k[i] * pair.beta(zeta_rho[i], c, self.binormal[i])
            })
            .collect()
    }

    /// Largest deviation from orthonormality of `{T, n_g, n}` and from `n_g = n x T`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.len() {
            let (t, g, n) = (self.tangent[i], self.geodesic_normal[i], self.normal[i]);
            for v in [t, g, n] {
                worst = worst.max((v.norm() - 1.0).abs());
            }
            worst = worst
                .max(t.dot(g).abs())
                .max(t.dot(n).abs())
                .max(g.dot(n).abs())
                .max((n.cross(t) - g).max_abs());
        }
        worst
    }

    /// Sup-norm residual of `k N = k_n n + k_g n_g`.
    pub fn decomposition_residual(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let lhs = self.k[i] * self.principal_normal[i];
                let rhs = self.k_n[i] * self.normal[i] + self.k_g[i] * self.geodesic_normal[i];
                (lhs - rhs).max_abs()
            })
            .fold(0.0, f64::max)
    }

    /// Sup-norm residual of `k B = k_g n - k_n n_g`.
    pub fn binormal_residual(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let lhs = self.k[i] * self.binormal[i];
                let rhs = self.k_g[i] * self.normal[i] - self.k_n[i] * self.geodesic_normal[i];
                (lhs - rhs).max_abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Evaluates 1-forms on tangent vectors at `theta = 0`, where `d_rho = (xi_r, 0, eta_r)`
/// and `d_theta = (0, xi, 0)`.
struct CoordinatePairing {
    xi: f64,
    xi_r: f64,
    eta_r: f64,
}

impl CoordinatePairing {
    fn d_rho(&self) -> Vec3 {
        Vec3::new(self.xi_r, 0.0, self.eta_r)
    }

    fn d_theta(&self) -> Vec3 {
        Vec3::new(0.0, self.xi, 0.0)
    }

    /// `(zeta_rho drho + c dtheta)(u)` for `u` tangent to the sheet (normal parts are ignored).
    fn beta(&self, zeta_rho: f64, c: f64, u: Vec3) -> f64 {
        let s2 = self.xi_r * self.xi_r + self.eta_r * self.eta_r;
        let u_rho = u.dot(self.d_rho()) / s2;
        let u_theta = u.dot(self.d_theta()) / (self.xi * self.xi);
        zeta_rho * u_rho + c * u_theta
    }
}

struct SampleFrame {
    t: Vec3,
    ng: Vec3,
    n: Vec3,
    nn: Vec3,
    b: Vec3,
    k: f64,
    k_n: f64,
    k_g: f64,
    beta_ng: f64,
    sigma_rho: f64,
    sigma_theta: f64,
}

/// Frame of the line `ker beta` through one sample.
///
/// The line is parametrized by `tau` with `rho_tau = c`, `theta_tau = -zeta_rho`, which
/// stays regular for every `beta` without zeros (including `c = 0` and `zeta_rho = 0`).
#[allow(clippy::too_many_arguments)]
fn sample_frame(
    xi: f64,
    xi_r: f64,
    eta_r: f64,
    xi_rr: f64,
    eta_rr: f64,
    zeta_rho: f64,
    zeta_rr: f64,
    c: f64,
    orientation: f64,
) -> SampleFrame {
    let s = xi_r.hypot(eta_r);
    let pair = CoordinatePairing { xi, xi_r, eta_r };
    let n = (orientation / s) * Vec3::new(-eta_r, 0.0, xi_r);

    let x_t = Vec3::new(c * xi_r, -zeta_rho * xi, c * eta_r);
    let x_tt = Vec3::new(
        c * c * xi_rr - zeta_rho * zeta_rho * xi,
        -2.0 * c * zeta_rho * xi_r - c * zeta_rr * xi,
        c * c * eta_rr,
    );
    let speed = x_t.norm();
    let unit = (1.0 / speed) * x_t;
    let curvature_vec = (1.0 / (speed * speed)) * (x_tt - x_tt.dot(unit) * unit);

    // orient the line so that beta(n_g) > 0
    let trial_ng = n.cross(unit);
    let t = if pair.beta(zeta_rho, c, trial_ng) < 0.0 {
        -unit
    } else {
        unit
    };
    let ng = n.cross(t);
    let beta_ng = pair.beta(zeta_rho, c, ng);

    let k = curvature_vec.norm();
    let nn = if k > 0.0 { (1.0 / k) * curvature_vec } else { n };
    SampleFrame {
        t,
        ng,
        n,
        nn,
        b: t.cross(nn),
        k,
        k_n: curvature_vec.dot(n),
        k_g: curvature_vec.dot(ng),
        beta_ng,
        sigma_rho: t.dot(pair.d_rho()),
        sigma_theta: t.dot(pair.d_theta()),
    }
}

/// Frames and curvatures of the fibers of any invariant `beta = zeta_rho drho + c dtheta`
/// without zeros, for the given normal orientation.
pub fn fiber_curvature_field(
    curve: &ProfileCurve,
    vorticity: &VorticityProfile,
    orientation: NormalOrientation,
    exec: Exec,
) -> Result<CurvatureField> {
    if curve.grid() != vorticity.grid() {
        return Err(Error::Contract("curve and vorticity grids differ".into()));
    }
    let d = curve.derivatives();
    let zeta_rho = vorticity.zeta_rho();
    let zeta_rr = vorticity.zeta_rho_rho();
    let c = vorticity.theta_constant();
    let sign = orientation.sign();
    let xi = curve.xi();

    if let Some(i) = (0..xi.len()).find(|&i| !(xi[i] > 0.0) || !(d.speed[i] > 0.0)) {
        return Err(Error::Geometry(format!(
            "degenerate sample {i}: xi = {}, speed = {}",
            xi[i], d.speed[i]
        )));
    }
    if let Some(i) = (0..xi.len()).find(|&i| zeta_rho[i] == 0.0 && c == 0.0) {
        return Err(Error::Geometry(format!("vorticity form vanishes at sample {i}")));
    }

    let frames = exec::map_indexed(xi.len(), exec, |i| {
        sample_frame(
            xi[i],
            d.xi_r[i],
            d.eta_r[i],
            d.xi_rr[i],
            d.eta_rr[i],
            zeta_rho[i],
            zeta_rr[i],
            c,
            sign,
        )
    });

    let mut field = CurvatureField {
        grid: curve.grid(),
        tangent: Vec::with_capacity(frames.len()),
        geodesic_normal: Vec::with_capacity(frames.len()),
        normal: Vec::with_capacity(frames.len()),
        principal_normal: Vec::with_capacity(frames.len()),
        binormal: Vec::with_capacity(frames.len()),
        k: Vec::with_capacity(frames.len()),
        k_n: Vec::with_capacity(frames.len()),
        k_g: Vec::with_capacity(frames.len()),
        beta_ng: Vec::with_capacity(frames.len()),
        sigma_rho: Vec::with_capacity(frames.len()),
        sigma_theta: Vec::with_capacity(frames.len()),
    };
    for f in frames {
        field.tangent.push(f.t);
        field.geodesic_normal.push(f.ng);
        field.normal.push(f.n);
        field.principal_normal.push(f.nn);
        field.binormal.push(f.b);
        field.k.push(f.k);
        field.k_n.push(f.k_n);
        field.k_g.push(f.k_g);
        field.beta_ng.push(f.beta_ng);
        field.sigma_rho.push(f.sigma_rho);
        field.sigma_theta.push(f.sigma_theta);
    }
    Ok(field)
}

/// Curvature field of a parallel-circle or meridian sheet.
pub fn curvature_field(sheet: &RevolutionSheet) -> Result<CurvatureField> {
    curvature_field_with(sheet, Exec::Auto)
}

pub fn curvature_field_with(sheet: &RevolutionSheet, exec: Exec) -> Result<CurvatureField> {
    match sheet.fibration() {
        Fibration::ParallelCircles | Fibration::Meridians => {}
        Fibration::Custom { m, n } => {
            return Err(Error::NotImplemented(format!(
                "curvature field for the R_{{{m},{n}}} fibration"
            )))
        }
    }
    sheet.ensure_valid()?;
    fiber_curvature_field(sheet.curve(), sheet.vorticity(), sheet.normal_orientation(), exec)
}
