//! Preset sheets and their JSON description.
//!
//! ```json
//! {"preset": "torus", "R": 2.0, "r": 1.0, "ell": 1.0, "fibration": "parallel", "grid": {"n": 128}}
//! {"preset": "fourier", "fibration": "parallel", "ell": 1.0, "grid": {"n": 128},
//!  "fourier": {"xi":  {"cos": [2.0, 1.0]},
//!              "eta": {"sin": [0.0, 0.5]},
//!              "zeta": {"winding": 1.0, "theta_constant": 0.0, "periodic": {"cos": [0.0, 0.0, 0.05]}}}}
//! ```
//!
//! A [`TrigSeries`] `{"cos": [a0, a1, ...], "sin": [b0, b1, ...]}` is
//! `sum_k a_k cos(k rho) + b_k sin(k rho)` (`b0` is inert). Unknown keys are rejected
//! at every level.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{Fibration, Grid, NormalOrientation, ProfileCurve, RevolutionSheet, ViolationKind, VorticityProfile};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigSeries {
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

impl TrigSeries {
    pub fn new(cos: Vec<f64>, sin: Vec<f64>) -> Self {
        Self { cos, sin }
    }

    pub fn eval(&self, rho: f64) -> f64 {
        let terms = self.cos.len().max(self.sin.len());
        let mut acc = 0.0;
        for k in 0..terms {
            let kr = k as f64 * rho;
            let a = self.cos.get(k).copied().unwrap_or(0.0);
            let b = self.sin.get(k).copied().unwrap_or(0.0);
            acc += a * kr.cos() + b * kr.sin();
        }
        acc
    }

    /// Highest wavenumber with a nonzero coefficient.
    pub fn degree(&self) -> usize {
        let last = |v: &[f64]| v.iter().rposition(|&x| x != 0.0).unwrap_or(0);
        last(&self.cos).max(last(&self.sin))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaSpec {
    /// Period `P` of `zeta` around the `rho` cycle.
    pub winding: Option<f64>,
    /// Coefficient `c` of `dtheta`.
    pub theta_constant: Option<f64>,
    #[serde(default)]
    pub periodic: TrigSeries,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FibrationSpec {
    #[default]
    Parallel,
    Meridian,
}

impl From<FibrationSpec> for Fibration {
    fn from(f: FibrationSpec) -> Self {
        match f {
            FibrationSpec::Parallel => Fibration::ParallelCircles,
            FibrationSpec::Meridian => Fibration::Meridians,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetKind {
    Torus,
    Fourier,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub n: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n: 128 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierSpec {
    pub xi: TrigSeries,
    pub eta: TrigSeries,
    #[serde(default)]
    pub zeta: ZetaSpec,
}

/// JSON preset document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetSpec {
    pub preset: PresetKind,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub major_radius: Option<f64>,
    #[serde(rename = "r", default, skip_serializing_if = "Option::is_none")]
    pub minor_radius: Option<f64>,
    #[serde(default = "one")]
    pub ell: f64,
    #[serde(default)]
    pub fibration: FibrationSpec,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fourier: Option<FourierSpec>,
}

fn one() -> f64 {
    1.0
}

impl PresetSpec {
    pub fn torus(major_radius: f64, minor_radius: f64, ell: f64, fibration: FibrationSpec, n: usize) -> Self {
        Self {
            preset: PresetKind::Torus,
            major_radius: Some(major_radius),
            minor_radius: Some(minor_radius),
            ell,
            fibration,
            grid: GridSpec { n },
            fourier: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn build(&self) -> Result<RevolutionSheet> {
        let grid = Grid::new(self.grid.n)?;
        match self.preset {
            PresetKind::Torus => {
                if self.fourier.is_some() {
                    return Err(Error::Config("\"fourier\" is only valid for the fourier preset".into()));
                }
                let big = self
                    .major_radius
                    .ok_or_else(|| Error::Config("torus preset needs \"R\"".into()))?;
                let small = self
                    .minor_radius
                    .ok_or_else(|| Error::Config("torus preset needs \"r\"".into()))?;
                make_torus_preset(big, small, self.fibration.into(), self.ell, grid)
            }
            PresetKind::Fourier => {
                if self.major_radius.is_some() || self.minor_radius.is_some() {
                    return Err(Error::Config("\"R\"/\"r\" are only valid for the torus preset".into()));
                }
                let f = self
                    .fourier
                    .as_ref()
                    .ok_or_else(|| Error::Config("fourier preset needs a \"fourier\" block".into()))?;
                let zeta = f.zeta.resolved(self.fibration, self.ell)?;
                make_fourier_preset(grid, &f.xi, &f.eta, &zeta, self.fibration.into())
            }
        }
    }
}

impl ZetaSpec {
    /// Fills missing period data from the fibration: parallel circles get `P = ell, c = 0`,
    /// meridians `P = 0, c = ell / 2pi`.
    fn resolved(&self, fibration: FibrationSpec, ell: f64) -> Result<ZetaSpec> {
        if !(ell > 0.0) {
            return Err(Error::InvalidPreset(format!("ell must be positive, got {ell}")));
        }
        let (p, c) = match fibration {
            FibrationSpec::Parallel => (ell, 0.0),
            FibrationSpec::Meridian => (0.0, ell / TAU),
        };
        Ok(ZetaSpec {
            winding: Some(self.winding.unwrap_or(p)),
            theta_constant: Some(self.theta_constant.unwrap_or(c)),
            periodic: self.periodic.clone(),
        })
    }
}

fn orientation_for(fibration: Fibration) -> NormalOrientation {
    match fibration {
        Fibration::Meridians => NormalOrientation::Outward,
        _ => NormalOrientation::Inward,
    }
}

/// Torus `xi = R + r cos rho`, `eta = r sin rho`.
///
/// Parallel circles carry `zeta = (ell / 2pi) rho`; meridians carry `beta = (ell / 2pi) dtheta`.
pub fn make_torus_preset(
    major_radius: f64,
    minor_radius: f64,
    fibration: Fibration,
    ell: f64,
    grid: Grid,
) -> Result<RevolutionSheet> {
    if !(minor_radius > 0.0) || !(major_radius > minor_radius) {
        return Err(Error::InvalidPreset(format!(
            "torus needs R > r > 0, got R = {major_radius}, r = {minor_radius}"
        )));
    }
    if !(ell > 0.0) {
        return Err(Error::InvalidPreset(format!("ell must be positive, got {ell}")));
    }
    let xi = grid.sample(|rho| major_radius + minor_radius * rho.cos());
    let eta = grid.sample(|rho| minor_radius * rho.sin());
    let curve = ProfileCurve::new(grid, xi, eta)?;
    let zeros = vec![0.0; grid.len()];
    let vorticity = match fibration {
        Fibration::ParallelCircles => VorticityProfile::new(grid, zeros, ell, 0.0)?,
        Fibration::Meridians => VorticityProfile::new(grid, zeros, 0.0, ell / TAU)?,
        Fibration::Custom { m, n } => {
            return Err(Error::InvalidPreset(format!(
                "torus preset supports parallel or meridian fibrations, not R_{{{m},{n}}}"
            )))
        }
    };
    let sheet = RevolutionSheet::new(curve, vorticity, fibration, orientation_for(fibration))?;
    sheet.ensure_valid()?;
    Ok(sheet)
}

/// Sheet whose profile and potential are truncated trigonometric series.
pub fn make_fourier_preset(
    grid: Grid,
    xi: &TrigSeries,
    eta: &TrigSeries,
    zeta: &ZetaSpec,
    fibration: Fibration,
) -> Result<RevolutionSheet> {
    let curve = ProfileCurve::new(grid, grid.sample(|r| xi.eval(r)), grid.sample(|r| eta.eval(r)))?;
    let vorticity = VorticityProfile::new(
        grid,
        grid.sample(|r| zeta.periodic.eval(r)),
        zeta.winding.unwrap_or(0.0),
        zeta.theta_constant.unwrap_or(0.0),
    )?;
    let sheet = RevolutionSheet::new(curve, vorticity, fibration, orientation_for(fibration))?;
    let violations = sheet.validate();
    if let Some(v) = violations.iter().find(|v| {
        matches!(
            v.kind,
            ViolationKind::AxisContact | ViolationKind::DegenerateParametrization
        )
    }) {
        return Err(Error::Geometry(v.to_string()));
    }
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    Ok(sheet)
}

/// Named sheets used by the checks and benches: both torus fibrations and three
/// non-circular parallel-circle profiles with non-uniform vorticity.
pub fn preset_catalog(n: usize) -> Result<Vec<(&'static str, RevolutionSheet)>> {
    let grid = Grid::new(n)?;
    let series = |cos: &[f64], sin: &[f64]| TrigSeries::new(cos.to_vec(), sin.to_vec());
    let zeta = |winding: f64, periodic: TrigSeries| ZetaSpec {
        winding: Some(winding),
        theta_constant: Some(0.0),
        periodic,
    };
    let parallel = Fibration::ParallelCircles;
    Ok(vec![
        ("torus-parallel", make_torus_preset(2.0, 1.0, parallel, 1.0, grid)?),
        (
            "torus-meridian",
            make_torus_preset(2.0, 1.0, Fibration::Meridians, 1.0, grid)?,
        ),
        (
            "ellipse",
            make_fourier_preset(
                grid,
                &series(&[2.0, 1.0], &[]),
                &series(&[], &[0.0, 0.6]),
                &zeta(1.0, series(&[0.0, 0.0, 0.05], &[])),
                parallel,
            )?,
        ),
        (
            "lobed",
            make_fourier_preset(
                grid,
                &series(&[3.0, 1.0, 0.2], &[]),
                &series(&[], &[0.0, 1.0, -0.15]),
                &zeta(2.0, series(&[], &[0.0, 0.0, 0.0, 0.05])),
                parallel,
            )?,
        ),
        (
            "tilted",
            make_fourier_preset(
                grid,
                &series(&[2.5, 0.8], &[0.0, 0.1]),
                &series(&[0.3, 0.2], &[0.0, 1.2, 0.0, 0.1]),
                &zeta(0.5, series(&[0.0, 0.02], &[])),
                parallel,
            )?,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheet::Violation;

    #[test]
    fn catalog_is_valid() {
        for (name, sheet) in preset_catalog(64).unwrap() {
            assert!(sheet.validate().is_empty(), "{name}: {:?}", sheet.validate());
        }
    }

    #[test]
    fn torus_samples() {
        let g = Grid::new(32).unwrap();
        let s = make_torus_preset(2.0, 1.0, Fibration::ParallelCircles, 1.0, g).unwrap();
        assert_eq!(s.curve().xi()[0], 3.0);
        assert_eq!(s.curve().eta()[0], 0.0);
        for z in s.vorticity().zeta_rho() {
            assert!((z - 1.0 / TAU).abs() < 1e-15);
        }
    }

    #[test]
    fn meridian_torus_form() {
        let g = Grid::new(32).unwrap();
        let s = make_torus_preset(2.0, 1.0, Fibration::Meridians, 1.0, g).unwrap();
        assert_eq!(s.vorticity().rho_winding(), 0.0);
        assert_eq!(s.vorticity().theta_constant(), 1.0 / TAU);
        assert!(s.vorticity().zeta_rho().iter().all(|&z| z == 0.0));
        assert_eq!(s.normal_orientation(), NormalOrientation::Outward);
    }

    #[test]
    fn self_intersecting_torus_rejected() {
        let g = Grid::new(32).unwrap();
        assert!(matches!(
            make_torus_preset(1.0, 2.0, Fibration::ParallelCircles, 1.0, g),
            Err(Error::InvalidPreset(_))
        ));
        assert!(make_torus_preset(2.0, 1.0, Fibration::ParallelCircles, 0.0, g).is_err());
    }

    #[test]
    fn fourier_torus_matches_analytic_torus() {
        for n in [16, 64, 256] {
            let g = Grid::new(n).unwrap();
            let torus = make_torus_preset(2.0, 1.0, Fibration::ParallelCircles, 1.0, g).unwrap();
            let zeta = ZetaSpec {
                winding: Some(1.0),
                theta_constant: Some(0.0),
                periodic: TrigSeries::default(),
            };
            let fourier = make_fourier_preset(
                g,
                &TrigSeries::new(vec![2.0, 1.0], vec![]),
                &TrigSeries::new(vec![], vec![0.0, 1.0]),
                &zeta,
                Fibration::ParallelCircles,
            )
            .unwrap();
            assert_eq!(torus, fourier);
        }
    }

    #[test]
    fn ellipse_and_axis_crossing() {
        let g = Grid::new(64).unwrap();
        let zeta = ZetaSpec {
            winding: Some(1.0),
            ..Default::default()
        };
        let ok = make_fourier_preset(
            g,
            &TrigSeries::new(vec![2.0, 1.0], vec![]),
            &TrigSeries::new(vec![], vec![0.0, 0.5]),
            &zeta,
            Fibration::ParallelCircles,
        );
        assert!(ok.is_ok());
        let bad = make_fourier_preset(
            g,
            &TrigSeries::new(vec![1.0, 2.0], vec![]),
            &TrigSeries::new(vec![], vec![0.0, 1.0]),
            &zeta,
            Fibration::ParallelCircles,
        );
        assert!(matches!(bad, Err(Error::Geometry(_))));
    }

    #[test]
    fn degenerate_speed_is_geometry_error() {
        let g = Grid::new(32).unwrap();
        let zeta = ZetaSpec {
            winding: Some(1.0),
            ..Default::default()
        };
        let flat = make_fourier_preset(
            g,
            &TrigSeries::new(vec![2.0], vec![]),
            &TrigSeries::new(vec![1.0], vec![]),
            &zeta,
            Fibration::ParallelCircles,
        );
        assert!(matches!(flat, Err(Error::Geometry(_))));
    }

    #[test]
    fn reversed_zeta_flagged() {
        let g = Grid::new(32).unwrap();
        let s = make_torus_preset(2.0, 1.0, Fibration::ParallelCircles, 1.0, g).unwrap();
        // zeta_rho = 1/2pi - 0.5 sin(rho) dips below zero
        let bumpy = VorticityProfile::new(g, g.sample(|r| 0.5 * r.cos()), 1.0, 0.0).unwrap();
        let bad = s.with_vorticity(bumpy).unwrap();
        let v: Vec<Violation> = bad.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::OrientationConvention);
        assert!(v[0].to_string().contains("beta(n_g)>0"));
        assert!(s.validate().is_empty());
    }

    #[test]
    fn json_presets() {
        let spec =
            PresetSpec::from_json(r#"{"preset":"torus","R":2,"r":1,"ell":1,"fibration":"meridian","grid":{"n":64}}"#)
                .unwrap();
        let s = spec.build().unwrap();
        assert_eq!(s.fibration(), Fibration::Meridians);
        assert_eq!(s.grid().len(), 64);

        let err = PresetSpec::from_json(r#"{"preset":"torus","R":2,"r":1,"colour":"red"}"#).unwrap_err();
        assert!(err.to_string().contains("colour"));

        let nested = PresetSpec::from_json(
            r#"{"preset":"fourier","fourier":{"xi":{"cos":[2,1]},"eta":{"sin":[0,1],"tan":[1]}}}"#,
        )
        .unwrap_err();
        assert!(nested.to_string().contains("tan"));

        let f = PresetSpec::from_json(
            r#"{"preset":"fourier","grid":{"n":32},"fourier":{"xi":{"cos":[2,1]},"eta":{"sin":[0,0.5]}}}"#,
        )
        .unwrap()
        .build()
        .unwrap();
        assert_eq!(f.vorticity().rho_winding(), 1.0);
    }
}
