//! Built-in acceptance checks with fixed parameters and tolerances.
//!
//! Each check returns an [`Outcome`] carrying the measured numbers, so a failing check
//! reports by how much it failed. A check that cannot run (an unexpected error) counts as
//! failed with the error as its detail.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{rhs_closed_form, rhs_geometric, simulate, SimConfig};
use crate::error::Result;
use crate::exec::{self, Exec};
use crate::geometry::{curvature_field, total_geodesic_curvature};
use crate::io;
use crate::observables::{hamiltonian, vertical_impulse};
use crate::prequant::{circle_distance, kernel_elements, kernel_order, m_a_map, onsager_feynman};
use crate::sheet::{
    make_torus_preset, preset_catalog, Fibration, Grid, NormalOrientation, RevolutionSheet, VorticityProfile,
};
use crate::stationarity::{classify, geodesic_fibration_report, stationarity_report, StationarityTolerances};

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}. {} ({:.3} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

fn timed(
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    check: impl FnOnce() -> Result<(bool, String)>,
) -> Outcome {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    if let Some(limit) = budget {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!(
                "; runtime {:.3} s exceeds {:.0} s",
                elapsed.as_secs_f64(),
                limit.as_secs_f64()
            ));
        }
    }
    Outcome {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

fn sup(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn torus(fibration: Fibration, n: usize) -> Result<RevolutionSheet> {
    make_torus_preset(2.0, 1.0, fibration, 1.0, Grid::new(n)?)
}

/// Curvatures of the two torus fibrations against their closed forms.
pub fn curvature_closed_forms() -> Outcome {
    timed(1, "curvature closed forms", Some(Duration::from_secs(1)), || {
        let par = torus(Fibration::ParallelCircles, 128)?;
        let field = curvature_field(&par)?;
        let rhos = par.grid().rhos();
        let kn_err = sup(rhos
            .iter()
            .zip(&field.k_n)
            .map(|(r, k)| (k - r.cos() / (2.0 + r.cos())).abs()));
        let kg_err = sup(rhos
            .iter()
            .zip(&field.k_g)
            .map(|(r, k)| (k - r.sin() / (2.0 + r.cos())).abs()));

        let mer = curvature_field(&torus(Fibration::Meridians, 128)?)?;
        let mer_kg = sup(mer.k_g.iter().map(|k| k.abs()));
        let mer_kn = sup(mer.k_n.iter().map(|k| (k + 1.0).abs()));
        Ok((
            kn_err <= 1e-10 && kg_err <= 1e-10 && mer_kg <= 1e-12 && mer_kn <= 1e-12,
            format!(
                "parallel |dk_n| = {kn_err:.2e}, |dk_g| = {kg_err:.2e} (tol 1e-10); meridian |k_g| = {mer_kg:.2e}, |k_n + 1| = {mer_kn:.2e} (tol 1e-12)"
            ),
        ))
    })
}

/// `(a, h, k) = (4 pi^2, 4 pi, 4.5 pi)` on the parallel torus at n = 64.
pub fn torus_observables() -> Outcome {
    timed(
        2,
        "observables on the parallel torus",
        Some(Duration::from_secs(1)),
        || {
            let s = torus(Fibration::ParallelCircles, 64)?;
            let got = [
                crate::geometry::enclosed_volume(&s),
                hamiltonian(&s)?,
                vertical_impulse(&s)?,
            ];
            let want = [4.0 * PI * PI, 4.0 * PI, 4.5 * PI];
            let rel: Vec<f64> = got.iter().zip(&want).map(|(g, w)| ((g - w) / w).abs()).collect();
            Ok((
                rel.iter().all(|&e| e <= 1e-12),
                format!(
                    "relative errors a = {:.2e}, h = {:.2e}, k = {:.2e} (tol 1e-12)",
                    rel[0], rel[1], rel[2]
                ),
            ))
        },
    )
}

/// Closed-form and frame-based right-hand sides agree on the parallel presets.
pub fn rhs_equivalence() -> Outcome {
    timed(3, "RHS equivalence", None, || {
        let sheets: Vec<_> = preset_catalog(128)?
            .into_iter()
            .filter(|(_, s)| s.fibration() == Fibration::ParallelCircles)
            .collect();
        let mut worst = 0.0_f64;
        let mut parts = Vec::new();
        for (name, sheet) in &sheets {
            let d = rhs_closed_form(sheet)?.sup_distance(&rhs_geometric(sheet)?);
            worst = worst.max(d);
            parts.push(format!("{name} {d:.2e}"));
        }
        Ok((
            worst <= 1e-8 && sheets.len() >= 4,
            format!("sup-norm distance: {} (tol 1e-8)", parts.join(", ")),
        ))
    })
}

/// Final-time relative drift of `(a, h, k)` on the parallel torus (n = 256, t = 0.05).
pub fn conservation_drifts(dts: &[f64], exec: Exec) -> Result<Vec<[f64; 3]>> {
    let sheet = torus(Fibration::ParallelCircles, 256)?;
    exec::sweep(dts, exec, |&dt| {
        let cfg = SimConfig {
            dt,
            t_final: 0.05,
            record_every: usize::MAX,
            ..SimConfig::default()
        };
        let traj = simulate(&sheet, &cfg)?;
        let d = traj.drifts.last().expect("final state is recorded");
        Ok([d.a, d.h, d.k])
    })
    .into_iter()
    .collect()
}

/// Drift ratios under dt-halving must sit in `[12, 20]` and the finest drift below 1e-9.
pub fn conservation_order() -> Outcome {
    timed(4, "conservation order", Some(Duration::from_secs(60)), || {
        let dts = [2e-4, 1e-4, 5e-5];
        let drifts = conservation_drifts(&dts, Exec::Auto)?;
        let names = ["a", "h", "k"];
        let mut ok = true;
        let mut parts = Vec::new();
        for q in 0..3 {
            let r1 = drifts[0][q] / drifts[1][q];
            let r2 = drifts[1][q] / drifts[2][q];
            let in_band = |r: f64| (12.0..=20.0).contains(&r);
            ok &= in_band(r1) && in_band(r2) && drifts[2][q] < 1e-9;
            parts.push(format!(
                "{}: drifts {:.2e}/{:.2e}/{:.2e}, ratios {r1:.2}/{r2:.2}",
                names[q], drifts[0][q], drifts[1][q], drifts[2][q]
            ));
        }
        Ok((ok, format!("{} (band [12, 20], finest < 1e-9)", parts.join("; "))))
    })
}

/// `int k_g xi s drho = 0` on every preset.
pub fn geodesic_curvature_quadrature() -> Outcome {
    timed(5, "total geodesic curvature vanishes", None, || {
        let mut worst = 0.0_f64;
        let mut parts = Vec::new();
        for (name, sheet) in preset_catalog(128)? {
            let total = total_geodesic_curvature(&sheet, &curvature_field(&sheet)?).abs();
            worst = worst.max(total);
            parts.push(format!("{name} {total:.2e}"));
        }
        Ok((worst <= 1e-12, format!("{} (tol 1e-12)", parts.join(", "))))
    })
}

/// Clairaut constants of the geodesic-fibration sweep.
pub const KAPPA_SWEEP: [f64; 10] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// Meridian torus and geodesic fibrations are not stationary.
pub fn no_stationary_points() -> Outcome {
    timed(6, "no stationary points", None, || {
        let s = torus(Fibration::Meridians, 128)?;
        let report = stationarity_report(&s)?;
        let field_err = sup(s
            .grid()
            .rhos()
            .iter()
            .zip(&report.kbb_field)
            .map(|(r, v)| (v + 1.0 / (TAU * (2.0 + r.cos()))).abs()));
        let mut ok = field_err <= 1e-10 && !report.is_stationary;

        let profile = torus(Fibration::ParallelCircles, 256)?;
        let tol = StationarityTolerances::default();
        let sweep = exec::sweep(&KAPPA_SWEEP, Exec::Auto, |&kappa| {
            geodesic_fibration_report(profile.curve(), 1.0 / TAU, kappa, &tol)
        });
        let mut min_var = f64::INFINITY;
        let mut max_kg = 0.0_f64;
        for r in sweep {
            let r = r?;
            ok &= !r.is_stationary && r.kbb_relative_variation > 1e-3;
            min_var = min_var.min(r.kbb_relative_variation);
            max_kg = max_kg.max(r.max_abs_kg);
        }
        Ok((
            ok,
            format!(
                "meridian field error {field_err:.2e} (tol 1e-10), stationary = {}; {} geodesic forms: min relative variation {min_var:.3} (> 1e-3), max |k_g| {max_kg:.2e}",
                report.is_stationary,
                KAPPA_SWEEP.len()
            ),
        ))
    })
}

/// Torus with volume `2 pi` (`R = 4/pi`, `r = 1/2`) and smallest period 3.
pub fn prequant_torus(n: usize) -> Result<RevolutionSheet> {
    make_torus_preset(4.0 / PI, 0.5, Fibration::ParallelCircles, 3.0, Grid::new(n)?)
}

pub fn prequant_arithmetic() -> Outcome {
    timed(7, "prequantization arithmetic", None, || {
        let report = onsager_feynman(&prequant_torus(64)?)?;
        let k = kernel_order(TAU, 3.0)?;
        let kernel = kernel_elements(TAU, 3.0)?;
        let kernel_ok = kernel.len() == 3
            && kernel
                .iter()
                .all(|&z| circle_distance(m_a_map(z, TAU, 3.0).unwrap_or(1.0), 0.0) <= 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut worst = 0.0_f64;
        for _ in 0..1000 {
            let z1 = rng.random_range(-30.0..30.0);
            let z2 = rng.random_range(-30.0..30.0);
            let lhs = m_a_map(z1 + z2, TAU, 3.0)?;
            let rhs = m_a_map(z1, TAU, 3.0)? + m_a_map(z2, TAU, 3.0)?;
            worst = worst.max(circle_distance(lhs, rhs));
        }
        Ok((
            report.k == Some(3) && k == 3 && kernel_ok && worst <= 1e-12,
            format!(
                "a = {:.15}, ell = {}, k = {:?}; kernel order {k}, kernel {:?}; homomorphism defect {worst:.2e} over 1000 pairs (tol 1e-12)",
                report.a, report.ell, report.k, kernel
            ),
        ))
    })
}

/// Sheet with periods `P = 3`, `2 pi c = 2` on the (2, 1) torus profile.
pub fn synthetic_period_sheet(n: usize) -> Result<RevolutionSheet> {
    let base = torus(Fibration::ParallelCircles, n)?;
    let grid = base.grid();
    let vorticity = VorticityProfile::new(grid, vec![0.0; grid.len()], 3.0, 2.0 / TAU)?;
    RevolutionSheet::new(
        base.curve().clone(),
        vorticity,
        Fibration::Custom { m: 3, n: 2 },
        NormalOrientation::Inward,
    )
}

pub fn classification() -> Outcome {
    timed(8, "classification", None, || {
        let cases = [
            (torus(Fibration::ParallelCircles, 64)?, (1, 0, 1.0)),
            (torus(Fibration::Meridians, 64)?, (0, 1, 1.0)),
            (synthetic_period_sheet(64)?, (3, 2, 1.0)),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (sheet, want) in &cases {
            let c = classify(sheet)?;
            ok &= (c.m, c.n, c.ell) == *want;
            parts.push(format!("({}, {}, {:?})", c.m, c.n, c.ell));
        }
        Ok((
            ok,
            format!("got {}; want (1, 0, 1.0), (0, 1, 1.0), (3, 2, 1.0)", parts.join(", ")),
        ))
    })
}

/// The CSV produced by two identical simulations is byte-identical.
pub fn determinism() -> Outcome {
    timed(9, "deterministic output", None, || {
        let sheet = torus(Fibration::ParallelCircles, 128)?;
        let cfg = SimConfig {
            dt: 1e-3,
            t_final: 0.05,
            record_every: 10,
            ..SimConfig::default()
        };
        let render = || -> Result<String> {
            let traj = simulate(&sheet, &cfg)?;
            let mut out = io::time_series_csv(&traj);
            for state in &traj.states {
                out.push_str(&io::snapshot_csv(state));
            }
            Ok(out)
        };
        let (first, second) = (render()?, render()?);
        Ok((
            first == second,
            format!("{} bytes per run, identical = {}", first.len(), first == second),
        ))
    })
}

/// Every check, in order.
pub fn run_all() -> Vec<Outcome> {
    vec![
        curvature_closed_forms(),
        torus_observables(),
        rhs_equivalence(),
        conservation_order(),
        geodesic_curvature_quadrature(),
        no_stationary_points(),
        prequant_arithmetic(),
        classification(),
        determinism(),
    ]
}
