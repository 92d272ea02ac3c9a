use log::{info, warn};

use super::rhs::{rhs_closed_form_with, rhs_geometric_with, SingularityGuard};
use super::{Drift, DriftWarning, Quantity, RhsMode, SimConfig, Termination, Trajectory, CROSSCHECK_TOLERANCE};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::geometry::{enclosed_volume, spectral};
use crate::observables::{hamiltonian, observable_set, vertical_impulse};
use crate::sheet::{Fibration, RevolutionSheet, TangentData};

#[derive(Debug, Clone, Copy)]
pub struct StepOptions {
    pub rhs_mode: RhsMode,
    pub dealias: bool,
    pub guard: SingularityGuard,
    pub exec: Exec,
}

impl StepOptions {
    pub fn new(rhs_mode: RhsMode) -> Self {
        Self {
            rhs_mode,
            dealias: false,
            guard: SingularityGuard::default(),
            exec: Exec::Auto,
        }
    }
}

fn filtered(data: TangentData) -> TangentData {
    let f = |v: Vec<f64>| spectral::dealias_two_thirds(&v).expect("grid length is even");
    TangentData {
        xi_dot: f(data.xi_dot),
        eta_dot: f(data.eta_dot),
        zeta_dot: f(data.zeta_dot),
    }
}

fn with_stage(err: Error, stage: usize) -> Error {
    match err {
        Error::Singularity { index, rho, reason, .. } => Error::Singularity {
            index,
            rho,
            stage: Some(stage),
            reason,
        },
        other => other,
    }
}

fn evaluate(sheet: &RevolutionSheet, opts: &StepOptions, stage: usize) -> Result<TangentData> {
    let rhs = match opts.rhs_mode {
        RhsMode::ClosedForm => rhs_closed_form_with(sheet, &opts.guard),
        RhsMode::Geometric => rhs_geometric_with(sheet, &opts.guard, opts.exec),
        RhsMode::CrossCheck => {
            let closed = rhs_closed_form_with(sheet, &opts.guard).map_err(|e| with_stage(e, stage))?;
            let geometric = rhs_geometric_with(sheet, &opts.guard, opts.exec).map_err(|e| with_stage(e, stage))?;
            let distance = closed.sup_distance(&geometric);
            if !(distance <= CROSSCHECK_TOLERANCE) {
                return Err(Error::RhsMismatch { stage, distance });
            }
            Ok(closed)
        }
    }
    .map_err(|e| with_stage(e, stage))?;
    Ok(if opts.dealias { filtered(rhs) } else { rhs })
}

/// `base + h * slope`, componentwise over the three state arrays.
fn advance(base: &RevolutionSheet, h: f64, slope: &TangentData) -> Result<RevolutionSheet> {
    let axpy = |x: &[f64], d: &[f64]| x.iter().zip(d).map(|(x, d)| x + h * d).collect::<Vec<_>>();
    base.with_state(
        axpy(base.curve().xi(), &slope.xi_dot),
        axpy(base.curve().eta(), &slope.eta_dot),
        axpy(base.vorticity().zeta_periodic(), &slope.zeta_dot),
    )
}

/// Classical four-stage Runge-Kutta step of size `dt` (negative `dt` integrates backwards).
pub fn step_rk4(sheet: &RevolutionSheet, dt: f64, rhs_mode: RhsMode) -> Result<RevolutionSheet> {
    step_rk4_with(sheet, dt, &StepOptions::new(rhs_mode))
}

pub fn step_rk4_with(sheet: &RevolutionSheet, dt: f64, opts: &StepOptions) -> Result<RevolutionSheet> {
    if !dt.is_finite() {
        return Err(Error::Contract(format!("time step must be finite, got {dt}")));
    }
    let k1 = evaluate(sheet, opts, 1)?;
    let k2 = evaluate(&advance(sheet, 0.5 * dt, &k1)?, opts, 2)?;
    let k3 = evaluate(&advance(sheet, 0.5 * dt, &k2)?, opts, 3)?;
    let k4 = evaluate(&advance(sheet, dt, &k3)?, opts, 4)?;

    let combine = |a: &[f64], b: &[f64], c: &[f64], d: &[f64]| {
        (0..a.len())
            .map(|i| (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]) / 6.0)
            .collect::<Vec<_>>()
    };
    let slope = TangentData {
        xi_dot: combine(&k1.xi_dot, &k2.xi_dot, &k3.xi_dot, &k4.xi_dot),
        eta_dot: combine(&k1.eta_dot, &k2.eta_dot, &k3.eta_dot, &k4.eta_dot),
        zeta_dot: combine(&k1.zeta_dot, &k2.zeta_dot, &k3.zeta_dot, &k4.zeta_dot),
    };
    advance(sheet, dt, &slope)
}

fn conserved(sheet: &RevolutionSheet) -> Result<[f64; 3]> {
    Ok([enclosed_volume(sheet), hamiltonian(sheet)?, vertical_impulse(sheet)?])
}

fn relative(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        ((value - reference) / reference).abs()
    }
}

/// Step sizes covering `[0, t_final]`: full steps of `dt` and one shorter closing step
/// when `t_final` is not a multiple of `dt`.
fn schedule(dt: f64, t_final: f64) -> Vec<(f64, f64)> {
    let full = (t_final / dt * (1.0 + 1e-12)).floor() as usize;
    let mut steps: Vec<(f64, f64)> = (1..=full).map(|i| (dt, i as f64 * dt)).collect();
    let covered = full as f64 * dt;
    if t_final - covered > 1e-12 * dt.max(t_final) {
        steps.push((t_final - covered, t_final));
    } else if let Some(last) = steps.last_mut() {
        last.1 = t_final;
    }
    steps
}

/// Fixed-step RK4 integration with conservation monitoring.
///
/// A singularity (or a right-hand-side mismatch in cross-check mode) ends the run early;
/// the partial trajectory is returned with [`Termination::Truncated`].
pub fn simulate(sheet: &RevolutionSheet, config: &SimConfig) -> Result<Trajectory> {
    if sheet.fibration() != Fibration::ParallelCircles {
        return Err(Error::NotImplemented(
            "simulation is implemented on the parallel-circle component R_{1,0} only".into(),
        ));
    }
    sheet.ensure_valid()?;
    if !(config.dt > 0.0) || !config.dt.is_finite() {
        return Err(Error::Config(format!("dt must be positive, got {}", config.dt)));
    }
    if !(config.t_final >= 0.0) || !config.t_final.is_finite() {
        return Err(Error::Config(format!(
            "t_final must be non-negative, got {}",
            config.t_final
        )));
    }
    if config.record_every == 0 {
        return Err(Error::Config("record_every must be at least 1".into()));
    }

    let opts = StepOptions {
        dealias: config.dealias,
        ..StepOptions::new(config.rhs_mode)
    };
    let initial = conserved(sheet)?;
    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![sheet.clone()],
        observables: vec![observable_set(sheet)?],
        drifts: vec![Drift::default()],
        max_rel_drift: Drift::default(),
        warnings: Vec::new(),
        termination: Termination::Completed,
    };
    let mut warned = [false; 3];
    let quantities = [Quantity::A, Quantity::H, Quantity::K];

    let steps = schedule(config.dt, config.t_final);
    let total = steps.len();
    info!("simulating {total} steps of dt = {} to t = {}", config.dt, config.t_final);
    let mut state = sheet.clone();
    let mut recorded_last = true;
    for (index, (h, t)) in steps.into_iter().enumerate() {
        let step = index + 1;
        let next = step_rk4_with(&state, h, &opts).and_then(|s| conserved(&s).map(|q| (s, q)));
        let (next, values) = match next {
            Ok(v) => v,
            Err(e) => {
                warn!("trajectory truncated at step {step} (t = {t}): {e}");
                if !recorded_last {
                    record(&mut traj, &state, t - h, &initial)?;
                }
                traj.termination = Termination::Truncated {
                    step,
                    t: t - h,
                    reason: e.to_string(),
                };
                return Ok(traj);
            }
        };
        state = next;

        let drift = [0, 1, 2].map(|q| relative(values[q], initial[q]));
        traj.max_rel_drift.a = traj.max_rel_drift.a.max(drift[0]);
        traj.max_rel_drift.h = traj.max_rel_drift.h.max(drift[1]);
        traj.max_rel_drift.k = traj.max_rel_drift.k.max(drift[2]);
        for q in 0..3 {
            if !warned[q] && drift[q] > config.drift_tolerance {
                warned[q] = true;
                warn!(
                    "relative drift of {:?} = {:e} exceeds tolerance at t = {t}",
                    quantities[q], drift[q]
                );
                traj.warnings.push(DriftWarning {
                    step,
                    t,
                    quantity: quantities[q],
                    relative_drift: drift[q],
                });
            }
        }

        recorded_last = step % config.record_every == 0 || step == total;
        if recorded_last {
            record(&mut traj, &state, t, &initial)?;
        }
    }
    info!("simulation finished: {} recorded states", traj.states.len());
    Ok(traj)
}

fn record(traj: &mut Trajectory, state: &RevolutionSheet, t: f64, initial: &[f64; 3]) -> Result<()> {
    let obs = observable_set(state)?;
    let k = obs.vertical_impulse_k.unwrap_or(f64::NAN);
    traj.drifts.push(Drift {
        a: relative(obs.volume_a, initial[0]),
        h: relative(obs.hamiltonian_h, initial[1]),
        k: relative(k, initial[2]),
    });
    traj.times.push(t);
    traj.states.push(state.clone());
    traj.observables.push(obs);
    Ok(())
}
