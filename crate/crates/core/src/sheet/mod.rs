//! Discrete circle-invariant vortex sheets.
//!
//! A sheet is a surface of revolution `(xi cos theta, xi sin theta, eta)` generated by a
//! closed profile curve `(xi(rho), eta(rho))`, carrying the invariant closed 1-form
//! `beta = zeta_rho drho + c dtheta`. Everything is sampled on a uniform periodic grid in
//! `rho`; the `theta` dependence is handled analytically elsewhere.

mod presets;
mod validate;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::spectral;

pub use presets::{
    make_fourier_preset, make_torus_preset, preset_catalog, FibrationSpec, FourierSpec, GridSpec, PresetKind,
    PresetSpec, TrigSeries, ZetaSpec,
};
pub use validate::{ValidationConfig, Violation, ViolationKind};

/// Default lower bound on the discrete speed `sqrt(xi_rho^2 + eta_rho^2)`.
pub const DEFAULT_EPS_SPEED: f64 = 1e-6;

/// Smallest admissible grid.
pub const MIN_SAMPLES: usize = 16;

/// Uniform grid `rho_i = 2 pi i / n`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Grid {
    n_samples: usize,
}

impl Grid {
    pub fn new(n_samples: usize) -> Result<Self> {
        if n_samples < MIN_SAMPLES || !n_samples.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n_samples must be even and >= {MIN_SAMPLES}, got {n_samples}"
            )));
        }
        Ok(Self { n_samples })
    }

    pub fn len(&self) -> usize {
        self.n_samples
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.n_samples as f64
    }

    pub fn rho(&self, i: usize) -> f64 {
        TAU * i as f64 / self.n_samples as f64
    }

    pub fn rhos(&self) -> Vec<f64> {
        (0..self.n_samples).map(|i| self.rho(i)).collect()
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        (0..self.n_samples).map(|i| f(self.rho(i))).collect()
    }
}

impl TryFrom<usize> for Grid {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        Grid::new(n)
    }
}

impl From<Grid> for usize {
    fn from(g: Grid) -> usize {
        g.n_samples
    }
}

// Grid guarantees an even length >= 16, the only failure mode of the spectral operators.
pub(crate) fn d_rho(samples: &[f64], winding: f64) -> Vec<f64> {
    spectral::spectral_derivative(samples, winding).expect("grid length is even")
}

pub(crate) fn d2_rho(samples: &[f64]) -> Vec<f64> {
    spectral::spectral_second_derivative(samples).expect("grid length is even")
}

fn check_samples(grid: &Grid, name: &str, values: &[f64]) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::Contract(format!(
            "{name} has {} samples, grid has {}",
            values.len(),
            grid.len()
        )));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Contract(format!("{name}[{i}] is not finite")));
    }
    Ok(())
}

/// Sampled generating curve of the surface of revolution.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    grid: Grid,
    xi: Vec<f64>,
    eta: Vec<f64>,
}

/// First and second `rho`-derivatives of a profile curve.
#[derive(Debug, Clone)]
pub struct CurveDerivatives {
    pub xi_r: Vec<f64>,
    pub eta_r: Vec<f64>,
    pub xi_rr: Vec<f64>,
    pub eta_rr: Vec<f64>,
    /// `sqrt(xi_r^2 + eta_r^2)`
    pub speed: Vec<f64>,
}

impl ProfileCurve {
    /// Only array lengths and finiteness are enforced here; geometric admissibility
    /// (`xi > 0`, non-degenerate speed) is reported by [`RevolutionSheet::validate`].
    pub fn new(grid: Grid, xi: Vec<f64>, eta: Vec<f64>) -> Result<Self> {
        check_samples(&grid, "xi", &xi)?;
        check_samples(&grid, "eta", &eta)?;
        Ok(Self { grid, xi, eta })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn first_derivatives(&self) -> (Vec<f64>, Vec<f64>) {
        (d_rho(&self.xi, 0.0), d_rho(&self.eta, 0.0))
    }

    pub fn speed(&self) -> Vec<f64> {
        let (xr, er) = self.first_derivatives();
        xr.iter().zip(&er).map(|(a, b)| a.hypot(*b)).collect()
    }

    pub fn derivatives(&self) -> CurveDerivatives {
        let (xi_r, eta_r) = self.first_derivatives();
        let speed = xi_r.iter().zip(&eta_r).map(|(a, b)| a.hypot(*b)).collect();
        CurveDerivatives {
            xi_rr: d2_rho(&self.xi),
            eta_rr: d2_rho(&self.eta),
            xi_r,
            eta_r,
            speed,
        }
    }

    /// Profile shifted by `dz` along the symmetry axis.
    pub fn translated(&self, dz: f64) -> Self {
        Self {
            grid: self.grid,
            xi: self.xi.clone(),
            eta: self.eta.iter().map(|e| e + dz).collect(),
        }
    }

    /// Reflection `eta -> -eta`, which reverses the parametrization orientation.
    pub fn reflected(&self) -> Self {
        Self {
            grid: self.grid,
            xi: self.xi.clone(),
            eta: self.eta.iter().map(|e| -e).collect(),
        }
    }

    /// Cyclic shift of the samples by `k` grid points (a reparametrization `rho -> rho + 2 pi k / n`).
    pub fn rotated(&self, k: usize) -> Self {
        let mut xi = self.xi.clone();
        let mut eta = self.eta.clone();
        xi.rotate_left(k % self.grid.len());
        eta.rotate_left(k % self.grid.len());
        Self {
            grid: self.grid,
            xi,
            eta,
        }
    }
}

/// Vorticity potential: `zeta(rho) = (P / 2pi) rho + zeta_periodic(rho)` and the `dtheta`
/// coefficient `c`, so that `beta = zeta_rho drho + c dtheta`.
#[derive(Debug, Clone, PartialEq)]
pub struct VorticityProfile {
    grid: Grid,
    zeta_periodic: Vec<f64>,
    rho_winding: f64,
    theta_constant: f64,
}

impl VorticityProfile {
    pub fn new(grid: Grid, zeta_periodic: Vec<f64>, rho_winding: f64, theta_constant: f64) -> Result<Self> {
        check_samples(&grid, "zeta_periodic", &zeta_periodic)?;
        if !rho_winding.is_finite() || !theta_constant.is_finite() {
            return Err(Error::Contract("period data must be finite".into()));
        }
        Ok(Self {
            grid,
            zeta_periodic,
            rho_winding,
            theta_constant,
        })
    }

    /// Builds the profile from sampled `zeta_rho`; the winding is its quadrature and the
    /// periodic part its mean-free spectral antiderivative.
    pub fn from_zeta_rho(grid: Grid, zeta_rho: &[f64], theta_constant: f64) -> Result<Self> {
        check_samples(&grid, "zeta_rho", zeta_rho)?;
        let winding = spectral::trapezoid(zeta_rho);
        let slope = winding / TAU;
        let fluctuation: Vec<f64> = zeta_rho.iter().map(|z| z - slope).collect();
        let periodic = spectral::spectral_antiderivative(&fluctuation)?;
        Self::new(grid, periodic, winding, theta_constant)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn zeta_periodic(&self) -> &[f64] {
        &self.zeta_periodic
    }

    /// Period `P` of `zeta_rho drho` around the `rho` cycle.
    pub fn rho_winding(&self) -> f64 {
        self.rho_winding
    }

    /// Coefficient `c` of `dtheta`; the `theta` cycle has period `2 pi c`.
    pub fn theta_constant(&self) -> f64 {
        self.theta_constant
    }

    pub fn zeta_rho(&self) -> Vec<f64> {
        d_rho(&self.zeta_periodic, self.rho_winding)
    }

    pub fn zeta_rho_rho(&self) -> Vec<f64> {
        d2_rho(&self.zeta_periodic)
    }

    /// Full potential samples including the winding term.
    pub fn zeta(&self) -> Vec<f64> {
        let slope = self.rho_winding / TAU;
        self.zeta_periodic
            .iter()
            .enumerate()
            .map(|(i, z)| slope * self.grid.rho(i) + z)
            .collect()
    }

    /// `zeta -> s * zeta`, scaling both periods.
    pub fn scaled(&self, s: f64) -> Self {
        Self {
            grid: self.grid,
            zeta_periodic: self.zeta_periodic.iter().map(|z| s * z).collect(),
            rho_winding: s * self.rho_winding,
            theta_constant: s * self.theta_constant,
        }
    }

    /// `zeta -> zeta + offset`; leaves `beta` unchanged.
    pub fn offset(&self, offset: f64) -> Self {
        Self {
            zeta_periodic: self.zeta_periodic.iter().map(|z| z + offset).collect(),
            ..self.clone()
        }
    }
}

/// How the vortex lines fiber the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Fibration {
    /// `rho = const` circles; component R_{1,0}.
    ParallelCircles,
    /// `theta = const` profile copies; component R_{0,1}.
    Meridians,
    /// General component R_{m,n}.
    Custom { m: i64, n: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalOrientation {
    Inward,
    Outward,
}

impl NormalOrientation {
    /// `+1` for the inward normal `(-eta_rho cos, -eta_rho sin, xi_rho) / s`, `-1` otherwise.
    /// The oriented area form is `sign * xi * s drho ^ dtheta`.
    pub fn sign(self) -> f64 {
        match self {
            NormalOrientation::Inward => 1.0,
            NormalOrientation::Outward => -1.0,
        }
    }
}

/// A circle-invariant vortex sheet: the state variable of the dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct RevolutionSheet {
    curve: ProfileCurve,
    vorticity: VorticityProfile,
    fibration: Fibration,
    normal_orientation: NormalOrientation,
}

impl RevolutionSheet {
    /// Checks grid agreement and the fibration/orientation pairing (parallel circles use
    /// the inward normal, meridians the outward one). Other invariants are diagnosed by
    /// [`validate`](Self::validate).
    pub fn new(
        curve: ProfileCurve,
        vorticity: VorticityProfile,
        fibration: Fibration,
        normal_orientation: NormalOrientation,
    ) -> Result<Self> {
        if curve.grid() != vorticity.grid() {
            return Err(Error::Contract(format!(
                "curve grid ({}) and vorticity grid ({}) differ",
                curve.grid().len(),
                vorticity.grid().len()
            )));
        }
        match (fibration, normal_orientation) {
            (Fibration::ParallelCircles, NormalOrientation::Outward) => {
                return Err(Error::Contract("parallel-circle sheets use the inward normal".into()))
            }
            (Fibration::Meridians, NormalOrientation::Inward) => {
                return Err(Error::Contract("meridian sheets use the outward normal".into()))
            }
            _ => {}
        }
        Ok(Self {
            curve,
            vorticity,
            fibration,
            normal_orientation,
        })
    }

    pub fn curve(&self) -> &ProfileCurve {
        &self.curve
    }

    pub fn vorticity(&self) -> &VorticityProfile {
        &self.vorticity
    }

    pub fn fibration(&self) -> Fibration {
        self.fibration
    }

    pub fn normal_orientation(&self) -> NormalOrientation {
        self.normal_orientation
    }

    pub fn grid(&self) -> Grid {
        self.curve.grid()
    }

    /// Same sheet with new sample arrays; period data, fibration and orientation are
    /// carried over unchanged.
    pub fn with_state(&self, xi: Vec<f64>, eta: Vec<f64>, zeta_periodic: Vec<f64>) -> Result<Self> {
        let grid = self.grid();
        Ok(Self {
            curve: ProfileCurve::new(grid, xi, eta)?,
            vorticity: VorticityProfile::new(
                grid,
                zeta_periodic,
                self.vorticity.rho_winding,
                self.vorticity.theta_constant,
            )?,
            fibration: self.fibration,
            normal_orientation: self.normal_orientation,
        })
    }

    pub fn with_curve(&self, curve: ProfileCurve) -> Result<Self> {
        Self::new(curve, self.vorticity.clone(), self.fibration, self.normal_orientation)
    }

    pub fn with_vorticity(&self, vorticity: VorticityProfile) -> Result<Self> {
        Self::new(self.curve.clone(), vorticity, self.fibration, self.normal_orientation)
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate::validate(self, &ValidationConfig::default())
    }

    pub fn validate_with(&self, config: &ValidationConfig) -> Vec<Violation> {
        validate::validate(self, config)
    }

    /// `Ok(())` when [`validate`](Self::validate) is clean.
    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(v))
        }
    }
}

/// Time derivatives of the sample arrays `(xi, eta, zeta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentData {
    pub xi_dot: Vec<f64>,
    pub eta_dot: Vec<f64>,
    pub zeta_dot: Vec<f64>,
}

impl TangentData {
    pub fn len(&self) -> usize {
        self.xi_dot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi_dot.is_empty()
    }

    /// Sup-norm distance over all three components.
    pub fn sup_distance(&self, other: &TangentData) -> f64 {
        let d = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0_f64, f64::max);
        d(&self.xi_dot, &other.xi_dot)
            .max(d(&self.eta_dot, &other.eta_dot))
            .max(d(&self.zeta_dot, &other.zeta_dot))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_contract() {
        assert!(Grid::new(16).is_ok());
        assert!(Grid::new(14).is_err());
        assert!(Grid::new(17).is_err());
        let g = Grid::new(32).unwrap();
        assert_eq!(g.rho(0), 0.0);
        assert!((g.rho(31) + g.spacing() - TAU).abs() < 1e-15);
    }

    #[test]
    fn mismatched_grids_rejected() {
        let g1 = Grid::new(16).unwrap();
        let g2 = Grid::new(32).unwrap();
        let curve = ProfileCurve::new(g1, vec![2.0; 16], vec![0.0; 16]).unwrap();
        let vort = VorticityProfile::new(g2, vec![0.0; 32], 1.0, 0.0).unwrap();
        assert!(RevolutionSheet::new(curve, vort, Fibration::ParallelCircles, NormalOrientation::Inward).is_err());
        assert!(ProfileCurve::new(g1, vec![2.0; 15], vec![0.0; 16]).is_err());
    }

    #[test]
    fn orientation_pairing() {
        let g = Grid::new(16).unwrap();
        let curve = ProfileCurve::new(g, vec![2.0; 16], vec![0.0; 16]).unwrap();
        let vort = VorticityProfile::new(g, vec![0.0; 16], 1.0, 0.0).unwrap();
        assert!(RevolutionSheet::new(
            curve.clone(),
            vort.clone(),
            Fibration::ParallelCircles,
            NormalOrientation::Outward
        )
        .is_err());
        assert!(RevolutionSheet::new(curve, vort, Fibration::Meridians, NormalOrientation::Inward).is_err());
    }

    #[test]
    fn zeta_roundtrip_from_derivative() {
        let g = Grid::new(64).unwrap();
        let zr = g.sample(|r| 0.4 + 0.1 * (2.0 * r).cos());
        let v = VorticityProfile::from_zeta_rho(g, &zr, 0.0).unwrap();
        assert!((v.rho_winding() - 0.8 * std::f64::consts::PI).abs() < 1e-14);
        for (a, b) in v.zeta_rho().iter().zip(&zr) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
