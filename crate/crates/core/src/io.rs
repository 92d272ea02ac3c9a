//! Deterministic text output: CSV time series and profile snapshots.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::dynamics::Trajectory;
use crate::error::Result;
use crate::sheet::RevolutionSheet;

/// Scientific notation with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

pub const TIME_SERIES_HEADER: &str = "t,a,h,k,drift_a,drift_h,drift_k";
pub const SNAPSHOT_HEADER: &str = "rho,xi,eta,zeta";

pub fn time_series_csv(traj: &Trajectory) -> String {
    let mut out = String::from(TIME_SERIES_HEADER);
    out.push('\n');
    for ((t, obs), drift) in traj.times.iter().zip(&traj.observables).zip(&traj.drifts) {
        let k = obs.vertical_impulse_k.unwrap_or(f64::NAN);
        let row = [*t, obs.volume_a, obs.hamiltonian_h, k, drift.a, drift.h, drift.k];
        let cols: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        writeln!(out, "{}", cols.join(",")).unwrap();
    }
    out
}

/// Samples of the full potential `zeta = (P / 2 pi) rho + zeta_periodic`.
pub fn snapshot_csv(sheet: &RevolutionSheet) -> String {
    let mut out = String::from(SNAPSHOT_HEADER);
    out.push('\n');
    let zeta = sheet.vorticity().zeta();
    let curve = sheet.curve();
    for (i, rho) in sheet.grid().rhos().into_iter().enumerate() {
        let cols = [rho, curve.xi()[i], curve.eta()[i], zeta[i]].map(fmt_f64);
        writeln!(out, "{}", cols.join(",")).unwrap();
    }
    out
}

/// Writes `timeseries.csv` and `snapshot_NNNN.csv` (one per recorded state) into `dir`,
/// creating it if needed. Returns the paths written, time series first.
pub fn write_trajectory(dir: &Path, traj: &Trajectory, snapshots: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let series = dir.join("timeseries.csv");
    fs::write(&series, time_series_csv(traj))?;
    written.push(series);
    if snapshots {
        for (i, state) in traj.states.iter().enumerate() {
            let path = dir.join(format!("snapshot_{i:04}.csv"));
            fs::write(&path, snapshot_csv(state))?;
            written.push(path);
        }
    }
    Ok(written)
}
