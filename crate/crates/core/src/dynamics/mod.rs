//! Hamiltonian dynamics on the parallel-circle component R_{1,0}.
//!
//! The state is the triple of sample arrays `(xi, eta, zeta_periodic)`. The winding `P`
//! and the `dtheta` coefficient `c` are invariants of the flow and are copied bit for bit
//! from step to step. There is no re-parametrization: the profile moves along its normal
//! and the parametrization speed is free to change.

mod integrator;
mod rhs;

use serde::{Deserialize, Serialize};

pub use integrator::{simulate, step_rk4, step_rk4_with, StepOptions};
pub use rhs::{rhs_closed_form, rhs_closed_form_with, rhs_geometric, rhs_geometric_with, SingularityGuard};

use crate::observables::ObservableSet;
use crate::sheet::RevolutionSheet;

/// Sup-norm disagreement between the two right-hand sides that aborts a cross-checked run.
pub const CROSSCHECK_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhsMode {
    /// Pointwise closed-form PDE right-hand side.
    #[default]
    #[serde(rename = "closed", alias = "closed_form")]
    ClosedForm,
    /// Right-hand side assembled from vortex-line frames and curvatures.
    Geometric,
    /// Both, compared at every RK stage.
    CrossCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimConfig {
    pub dt: f64,
    pub t_final: f64,
    pub record_every: usize,
    /// Relative drift of `a`, `h` or `k` that triggers a warning record.
    pub drift_tolerance: f64,
    pub rhs_mode: RhsMode,
    /// Apply the 2/3-rule filter to every right-hand side evaluation.
    pub dealias: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 1e-4,
            t_final: 0.1,
            record_every: 100,
            drift_tolerance: 1e-8,
            rhs_mode: RhsMode::ClosedForm,
            dealias: false,
        }
    }
}

/// Maximum relative drift of the conserved quantities against their initial values.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Drift {
    pub a: f64,
    pub h: f64,
    pub k: f64,
}

impl Drift {
    pub fn max(&self) -> f64 {
        self.a.max(self.h).max(self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    A,
    H,
    K,
}

/// First time a quantity's relative drift exceeded the configured tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftWarning {
    pub step: usize,
    pub t: f64,
    pub quantity: Quantity,
    pub relative_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Termination {
    Completed,
    /// The run stopped early; the trajectory holds every state up to the failure.
    Truncated {
        step: usize,
        t: f64,
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<RevolutionSheet>,
    pub observables: Vec<ObservableSet>,
    /// Relative drift of `(a, h, k)` at every recorded time.
    pub drifts: Vec<Drift>,
    /// Taken over every step, not only the recorded ones.
    pub max_rel_drift: Drift,
    pub warnings: Vec<DriftWarning>,
    pub termination: Termination,
}

impl Trajectory {
    pub fn is_truncated(&self) -> bool {
        matches!(self.termination, Termination::Truncated { .. })
    }

    pub fn final_state(&self) -> &RevolutionSheet {
        self.states.last().expect("trajectory holds the initial state")
    }
}
