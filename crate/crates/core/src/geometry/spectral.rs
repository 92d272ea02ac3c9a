//! Fourier differentiation and quadrature on the uniform periodic grid.
//!
//! All operators act on the periodic part of a sampled function; a linear winding term
//! `(winding / 2pi) * rho` contributes the constant `winding / 2pi` to the first derivative.
//! The Nyquist mode is zeroed by every derivative so real data stays real and the first
//! derivative is skew-symmetric.

use std::cell::RefCell;
use std::f64::consts::TAU;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plans(n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(n), p.plan_fft_inverse(n))
    })
}

/// Signed wavenumber of FFT bin `k`, with the Nyquist bin mapped to `None`.
fn wavenumber(k: usize, n: usize) -> Option<f64> {
    let half = n / 2;
    if k < half {
        Some(k as f64)
    } else if k == half {
        None
    } else {
        Some(k as f64 - n as f64)
    }
}

fn check_len(len: usize) -> Result<()> {
    if len < 2 || !len.is_multiple_of(2) {
        return Err(Error::Contract(format!(
            "spectral operators need an even sample count, got {len}"
        )));
    }
    Ok(())
}

/// Applies a multiplier `m(wavenumber)` in Fourier space; `None` (Nyquist) is zeroed.
fn apply_multiplier<F>(samples: &[f64], multiplier: F) -> Result<Vec<f64>>
where
    F: Fn(Option<f64>) -> Complex64,
{
    let n = samples.len();
    check_len(n)?;
    let (fwd, inv) = plans(n);
    let mut buf: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    fwd.process(&mut buf);
    for (k, c) in buf.iter_mut().enumerate() {
        *c *= multiplier(wavenumber(k, n));
    }
    inv.process(&mut buf);
    let scale = 1.0 / n as f64;
    Ok(buf.into_iter().map(|c| c.re * scale).collect())
}

/// d/drho of `(winding / 2pi) rho + periodic(rho)` sampled on `rho_i = 2 pi i / n`.
pub fn spectral_derivative(samples: &[f64], winding: f64) -> Result<Vec<f64>> {
    let mut d = apply_multiplier(samples, |k| match k {
        Some(k) => Complex64::new(0.0, k),
        None => Complex64::new(0.0, 0.0),
    })?;
    let slope = winding / TAU;
    if slope != 0.0 {
        d.iter_mut().for_each(|x| *x += slope);
    }
    Ok(d)
}

/// Second derivative of the periodic part (the winding term is linear and drops out).
///
/// Equals two applications of [`spectral_derivative`] up to rounding, since both zero the
/// Nyquist mode.
pub fn spectral_second_derivative(samples: &[f64]) -> Result<Vec<f64>> {
    apply_multiplier(samples, |k| match k {
        Some(k) => Complex64::new(-k * k, 0.0),
        None => Complex64::new(0.0, 0.0),
    })
}

/// Mean-free periodic antiderivative. The mean of `samples` must be removed by the caller
/// (it is a winding contribution, not a periodic one); it is discarded here.
pub fn spectral_antiderivative(samples: &[f64]) -> Result<Vec<f64>> {
    apply_multiplier(samples, |k| match k {
        Some(k) if k != 0.0 => Complex64::new(0.0, -1.0 / k),
        _ => Complex64::new(0.0, 0.0),
    })
}

/// 2/3-rule filter: zeroes every mode with `|k| > n/3`.
pub fn dealias_two_thirds(samples: &[f64]) -> Result<Vec<f64>> {
    let cutoff = samples.len() as f64 / 3.0;
    apply_multiplier(samples, |k| match k {
        Some(k) if k.abs() <= cutoff => Complex64::new(1.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    })
}

/// Periodic trapezoid rule for `int_0^{2pi} f(rho) drho`, summed in index order.
pub fn trapezoid(samples: &[f64]) -> f64 {
    let n = samples.len();
    if n == 0 {
        return 0.0;
    }
    samples.iter().sum::<f64>() * (TAU / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|i| TAU * i as f64 / n as f64).collect()
    }

    #[test]
    fn derivative_of_cosine() {
        let rho = grid(64);
        let f: Vec<f64> = rho.iter().map(|r| r.cos()).collect();
        let d = spectral_derivative(&f, 0.0).unwrap();
        for (r, di) in rho.iter().zip(&d) {
            assert!((di + r.sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn winding_only() {
        let d = spectral_derivative(&[0.0; 32], TAU).unwrap();
        assert!(d.iter().all(|&x| (x - 1.0).abs() < 1e-15));
        let d = spectral_derivative(&vec![0.0; 64], 1.0).unwrap();
        assert!(d.iter().all(|&x| (x - 1.0 / TAU).abs() < 1e-16));
    }

    #[test]
    fn nyquist_is_zeroed() {
        let f: Vec<f64> = (0..16).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let d = spectral_derivative(&f, 0.0).unwrap();
        assert!(d.iter().all(|x| x.abs() < 1e-14));
        let d2 = spectral_second_derivative(&f).unwrap();
        assert!(d2.iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn odd_length_rejected() {
        assert!(matches!(spectral_derivative(&[0.0; 15], 0.0), Err(Error::Contract(_))));
    }

    #[test]
    fn second_derivative_matches_composition() {
        let rho = grid(64);
        let f: Vec<f64> = rho
            .iter()
            .map(|r| 0.3 * (3.0 * r).sin() + (5.0 * r).cos() - 0.1 * (17.0 * r).cos())
            .collect();
        let once = spectral_derivative(&f, 0.0).unwrap();
        let twice = spectral_derivative(&once, 0.0).unwrap();
        let direct = spectral_second_derivative(&f).unwrap();
        let exact: Vec<f64> = rho
            .iter()
            .map(|r| -2.7 * (3.0 * r).sin() - 25.0 * (5.0 * r).cos() + 28.9 * (17.0 * r).cos())
            .collect();
        for i in 0..64 {
            assert!((twice[i] - direct[i]).abs() < 1e-11);
            assert!((direct[i] - exact[i]).abs() < 1e-11);
        }
    }

    #[test]
    fn antiderivative_inverts_derivative() {
        let rho = grid(32);
        let f: Vec<f64> = rho.iter().map(|r| (2.0 * r).sin() + 0.5 * r.cos()).collect();
        let g = spectral_antiderivative(&spectral_derivative(&f, 0.0).unwrap()).unwrap();
        for i in 0..32 {
            assert!((g[i] - f[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn trapezoid_exact_for_trig_polynomials() {
        let rho = grid(16);
        let f: Vec<f64> = rho.iter().map(|r| 2.0 + r.cos().powi(2)).collect();
        assert!((trapezoid(&f) - 5.0 * std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn dealias_keeps_low_modes() {
        let rho = grid(48);
        let low: Vec<f64> = rho.iter().map(|r| (3.0 * r).cos()).collect();
        let high: Vec<f64> = rho.iter().map(|r| (20.0 * r).cos()).collect();
        let sum: Vec<f64> = low.iter().zip(&high).map(|(a, b)| a + b).collect();
        let filtered = dealias_two_thirds(&sum).unwrap();
        for i in 0..48 {
            assert!((filtered[i] - low[i]).abs() < 1e-13);
        }
    }
}
