mod common;

use common::{fourier_case, max_abs_diff, torus};
use proptest::prelude::*;
use vortex_sheet::dynamics::{
    rhs_closed_form, rhs_geometric, simulate, step_rk4, step_rk4_with, RhsMode, SimConfig, SingularityGuard,
    StepOptions, Termination,
};
use vortex_sheet::observables::{hamiltonian, vertical_impulse};
use vortex_sheet::sheet::make_torus_preset;
use vortex_sheet::{Error, Fibration, Grid, RevolutionSheet};

fn state_distance(a: &RevolutionSheet, b: &RevolutionSheet) -> f64 {
    max_abs_diff(a.curve().xi(), b.curve().xi())
        .max(max_abs_diff(a.curve().eta(), b.curve().eta()))
        .max(max_abs_diff(
            a.vorticity().zeta_periodic(),
            b.vorticity().zeta_periodic(),
        ))
}

fn integrate(sheet: &RevolutionSheet, dt: f64, steps: usize) -> RevolutionSheet {
    (0..steps).fold(sheet.clone(), |s, _| step_rk4(&s, dt, RhsMode::ClosedForm).unwrap())
}

fn lobed(n: usize) -> RevolutionSheet {
    vortex_sheet::sheet::preset_catalog(n)
        .unwrap()
        .into_iter()
        .find(|(name, _)| *name == "lobed")
        .unwrap()
        .1
}

#[test]
fn zero_step_is_the_identity() {
    let s = lobed(64);
    assert_eq!(step_rk4(&s, 0.0, RhsMode::ClosedForm).unwrap(), s);
}

#[test]
fn non_finite_step_is_rejected() {
    let s = torus(Fibration::ParallelCircles, 16);
    assert!(matches!(
        step_rk4(&s, f64::NAN, RhsMode::ClosedForm),
        Err(Error::Contract(_))
    ));
}

#[test]
fn period_data_is_untouched() {
    let s = lobed(64);
    let t = integrate(&s, 1e-3, 20);
    assert_eq!(
        t.vorticity().rho_winding().to_bits(),
        s.vorticity().rho_winding().to_bits()
    );
    assert_eq!(
        t.vorticity().theta_constant().to_bits(),
        s.vorticity().theta_constant().to_bits()
    );
}

#[test]
fn backward_step_returns_to_the_start() {
    let s = lobed(64);
    for dt in [1e-2, 5e-3] {
        let there = step_rk4(&s, dt, RhsMode::ClosedForm).unwrap();
        let back = step_rk4(&there, -dt, RhsMode::ClosedForm).unwrap();
        // RK4 is not symmetric; the round trip error is O(dt^5)
        assert!(
            state_distance(&back, &s) < 50.0 * dt.powi(5),
            "dt = {dt}: {}",
            state_distance(&back, &s)
        );
    }
}

#[test]
fn state_error_converges_at_fourth_order() {
    let s = lobed(64);
    let t_end = 0.05;
    let reference = integrate(&s, t_end / 256.0, 256);
    let errors: Vec<f64> = [0.025, 0.0125, 0.00625]
        .iter()
        .map(|&dt| state_distance(&integrate(&s, dt, (t_end / dt).round() as usize), &reference))
        .collect();
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!((12.0..=20.0).contains(&ratio), "errors {errors:?}");
    }
}

#[test]
fn conserved_quantities_hold_along_a_run() {
    let s = lobed(64);
    let cfg = SimConfig {
        dt: 1e-3,
        t_final: 0.05,
        record_every: 10,
        ..SimConfig::default()
    };
    let traj = simulate(&s, &cfg).unwrap();
    assert_eq!(traj.termination, Termination::Completed);
    assert!(traj.max_rel_drift.max() < 1e-10, "{:?}", traj.max_rel_drift);
    assert!(traj.warnings.is_empty());
    let last = traj.final_state();
    assert!((hamiltonian(last).unwrap() - hamiltonian(&s).unwrap()).abs() < 1e-9);
    assert!((vertical_impulse(last).unwrap() - vertical_impulse(&s).unwrap()).abs() < 1e-9);
}

#[test]
fn recording_schedule_includes_both_ends() {
    let s = torus(Fibration::ParallelCircles, 32);
    let cfg = SimConfig {
        dt: 0.003,
        t_final: 0.01,
        record_every: 2,
        ..SimConfig::default()
    };
    let traj = simulate(&s, &cfg).unwrap();
    assert_eq!(traj.times.first(), Some(&0.0));
    assert_eq!(traj.times.last(), Some(&0.01));
    assert_eq!(traj.times.len(), traj.states.len());
    assert_eq!(traj.times.len(), traj.drifts.len());
    assert!(traj.times.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn zero_duration_records_only_the_initial_state() {
    let s = torus(Fibration::ParallelCircles, 32);
    let cfg = SimConfig {
        t_final: 0.0,
        ..SimConfig::default()
    };
    let traj = simulate(&s, &cfg).unwrap();
    assert_eq!(traj.times, vec![0.0]);
    assert_eq!(traj.states[0], s);
}

#[test]
fn crosscheck_mode_agrees_with_the_closed_form() {
    let s = lobed(64);
    let closed = step_rk4(&s, 1e-3, RhsMode::ClosedForm).unwrap();
    let checked = step_rk4(&s, 1e-3, RhsMode::CrossCheck).unwrap();
    assert!(state_distance(&closed, &checked) < 1e-13);
    let geometric = step_rk4(&s, 1e-3, RhsMode::Geometric).unwrap();
    assert!(state_distance(&closed, &geometric) < 1e-12);
}

#[test]
fn guard_violation_names_the_stage() {
    let s = torus(Fibration::ParallelCircles, 32);
    let opts = StepOptions {
        guard: SingularityGuard {
            eps_xi: 1.5,
            ..SingularityGuard::default()
        },
        ..StepOptions::new(RhsMode::ClosedForm)
    };
    match step_rk4_with(&s, 1e-3, &opts) {
        Err(Error::Singularity { stage, .. }) => assert_eq!(stage, Some(1)),
        other => panic!("expected a singularity, got {other:?}"),
    }
}

#[test]
fn thin_torus_run_is_truncated_not_lost() {
    let s = make_torus_preset(1.1, 1.0, Fibration::ParallelCircles, 1.0, Grid::new(64).unwrap()).unwrap();
    let cfg = SimConfig {
        dt: 1e-3,
        t_final: 0.5,
        record_every: 1000,
        ..SimConfig::default()
    };
    let traj = simulate(&s, &cfg).unwrap();
    let Termination::Truncated { step, t, reason } = &traj.termination else {
        panic!("expected truncation");
    };
    assert!(*t > 0.0 && *t < 0.5);
    assert!(!reason.is_empty());
    // initial state plus the last good state
    assert_eq!(traj.states.len(), 2);
    assert!((traj.times[1] - (*step - 1) as f64 * 1e-3).abs() < 1e-12);
}

#[test]
fn meridian_sheets_are_not_simulated() {
    let s = torus(Fibration::Meridians, 32);
    assert!(matches!(
        simulate(&s, &SimConfig::default()),
        Err(Error::NotImplemented(_))
    ));
}

#[test]
fn bad_configurations_are_rejected() {
    let s = torus(Fibration::ParallelCircles, 32);
    for cfg in [
        SimConfig {
            dt: 0.0,
            ..SimConfig::default()
        },
        SimConfig {
            dt: -1e-3,
            ..SimConfig::default()
        },
        SimConfig {
            t_final: -1.0,
            ..SimConfig::default()
        },
        SimConfig {
            record_every: 0,
            ..SimConfig::default()
        },
    ] {
        assert!(matches!(simulate(&s, &cfg), Err(Error::Config(_))), "{cfg:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn right_hand_sides_agree(case in fourier_case()) {
        let s = case.build(128);
        let closed = rhs_closed_form(&s).unwrap();
        let geometric = rhs_geometric(&s).unwrap();
        prop_assert!(closed.sup_distance(&geometric) < 1e-10, "{}", closed.sup_distance(&geometric));
    }

    #[test]
    fn short_runs_conserve(case in fourier_case()) {
        let s = case.build(64);
        let cfg = SimConfig { dt: 2e-3, t_final: 0.02, record_every: 5, ..SimConfig::default() };
        let traj = simulate(&s, &cfg).unwrap();
        prop_assert_eq!(&traj.termination, &Termination::Completed);
        prop_assert!(traj.max_rel_drift.max() < 1e-9, "{:?}", traj.max_rel_drift);
    }
}
