//! Circle-invariant vortex sheets in ideal 3D fluids.
//!
//! A vortex sheet supported on a surface of revolution is described by its profile curve
//! `(xi(rho), eta(rho))` and the invariant vorticity 1-form `beta = zeta_rho drho + c dtheta`.
//! This crate provides:
//!
//! * [`sheet`]: discrete sheets on a uniform periodic grid, presets and validation;
//! * [`geometry`]: Fourier differentiation, Darboux/Frenet frames and curvatures of the
//!   vortex lines, enclosed volume and wedge integrals;
//! * [`observables`]: the Hamiltonian (total vortex-line length), vertical impulse and the
//!   SE(3) momentum pairings;
//! * [`dynamics`]: the Hamiltonian flow on parallel-circle sheets, two independent
//!   right-hand sides, RK4 and conservation monitoring;
//! * [`stationarity`]: the geodesic/constancy test for stationary points, geodesic
//!   fibrations, and classification into components `R_{m,n}`;
//! * [`prequant`]: the integrality condition `a ell in 2 pi Z` and the circle homomorphism `m_a`.

// `!(x > y)` is used on purpose so that NaN fails every positivity check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod io;
pub mod observables;
pub mod prequant;
pub mod sheet;
pub mod stationarity;

pub use error::{Error, Result};
pub use exec::Exec;
pub use sheet::{Fibration, Grid, NormalOrientation, ProfileCurve, RevolutionSheet, VorticityProfile};
