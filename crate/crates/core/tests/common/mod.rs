#![allow(dead_code)]

use std::f64::consts::TAU;

use proptest::prelude::*;
use vortex_sheet::sheet::{make_fourier_preset, make_torus_preset, TrigSeries, ZetaSpec};
use vortex_sheet::{Fibration, Grid, RevolutionSheet};

/// Analytic description of a parallel-circle sheet with a low-degree Fourier profile.
#[derive(Debug, Clone)]
pub struct FourierCase {
    pub xi: TrigSeries,
    pub eta: TrigSeries,
    pub winding: f64,
    pub periodic: TrigSeries,
}

impl FourierCase {
    pub fn build(&self, n: usize) -> RevolutionSheet {
        let zeta = ZetaSpec {
            winding: Some(self.winding),
            theta_constant: Some(0.0),
            periodic: self.periodic.clone(),
        };
        make_fourier_preset(
            Grid::new(n).unwrap(),
            &self.xi,
            &self.eta,
            &zeta,
            Fibration::ParallelCircles,
        )
        .unwrap()
    }

    pub fn zeta(&self, rho: f64) -> f64 {
        self.winding / TAU * rho + self.periodic.eval(rho)
    }
}

prop_compose! {
    /// Perturbed ellipses kept well away from the axis and from zero speed, with `zeta_rho > 0`.
    pub fn fourier_case()(
        big in 2.0..4.0f64,
        a1 in 0.6..1.0f64,
        b1 in 0.6..1.2f64,
        xp in prop::array::uniform4(-0.04..0.04f64),
        winding in 0.5..2.0f64,
        zp in prop::array::uniform4(-0.04..0.04f64),
    ) -> FourierCase {
        let amp = winding / TAU;
        FourierCase {
            xi: TrigSeries::new(vec![big, a1, xp[0], xp[1]], vec![0.0, 0.0, xp[2]]),
            eta: TrigSeries::new(vec![0.0, 0.0, xp[3]], vec![0.0, b1, 0.0, xp[2]]),
            winding,
            periodic: TrigSeries::new(
                vec![0.0, zp[0] * amp, zp[1] * amp],
                vec![0.0, zp[2] * amp, zp[3] * amp],
            ),
        }
    }
}

pub fn torus(fibration: Fibration, n: usize) -> RevolutionSheet {
    make_torus_preset(2.0, 1.0, fibration, 1.0, Grid::new(n).unwrap()).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
