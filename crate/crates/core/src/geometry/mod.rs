//! Spectral calculus, vortex-line frames and 1D reductions of surface integrals.

mod frames;
mod integrals;
pub mod spectral;

pub use frames::{curvature_field, curvature_field_with, fiber_curvature_field, CurvatureField, Vec3};
pub use integrals::{enclosed_volume, total_geodesic_curvature, wedge_integral};
pub use spectral::{spectral_derivative, spectral_second_derivative, trapezoid};
