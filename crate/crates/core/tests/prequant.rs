mod common;

use std::f64::consts::{PI, TAU};

use common::torus;
use proptest::prelude::*;
use vortex_sheet::prequant::{
    circle_distance, flux_derivative, kernel_elements, kernel_order, m_a_map, onsager_feynman, onsager_feynman_values,
};
use vortex_sheet::sheet::{make_torus_preset, preset_catalog};
use vortex_sheet::{Error, Fibration, Grid};

/// `(a, ell)` with `a ell / 2 pi = k`.
fn quantized(k: i64, ell: f64) -> (f64, f64) {
    (TAU * k as f64 / ell, ell)
}

#[test]
fn unit_torus_is_not_prequantizable() {
    let r = onsager_feynman(&torus(Fibration::ParallelCircles, 64)).unwrap();
    assert!((r.a - 4.0 * PI * PI).abs() < 1e-12);
    assert_eq!(r.ell, 1.0);
    assert!((r.product_over_2pi - TAU).abs() < 1e-12);
    assert_eq!(r.k, None);
    assert!(!r.prequantizable);
}

#[test]
fn torus_with_integral_volume_flux_is_prequantizable() {
    // a = 2 pi^2 R r^2 = 2 pi, so a ell / 2 pi = ell = 3
    let (r_big, r_small, ell) = (4.0 / PI, 0.5, 3.0);
    let s = make_torus_preset(r_big, r_small, Fibration::ParallelCircles, ell, Grid::new(64).unwrap()).unwrap();
    let r = onsager_feynman(&s).unwrap();
    assert!((r.a - 2.0 * PI).abs() < 1e-12);
    assert_eq!(r.k, Some(3));
    assert!(r.prequantizable);
    assert_eq!(kernel_order(r.a, r.ell).unwrap(), 3);
}

#[test]
fn ill_defined_map_is_an_error() {
    assert!(matches!(m_a_map(0.3, 1.0, 1.0), Err(Error::IllDefinedMap { .. })));
    assert!(matches!(kernel_elements(-TAU, 1.0), Err(Error::IllDefinedMap { .. })));
    assert!(!onsager_feynman_values(TAU, -1.0).prequantizable);
}

#[test]
fn map_is_well_defined_on_the_quotient() {
    let (a, ell) = quantized(5, 0.7);
    for z in [0.0, 0.1, 0.33, -0.2] {
        let base = m_a_map(z, a, ell).unwrap();
        for shift in [-3.0, 1.0, 2.0, 17.0] {
            assert!(circle_distance(m_a_map(z + shift * ell, a, ell).unwrap(), base) < 1e-9);
        }
    }
}

#[test]
fn tangent_field_of_the_fibers_has_zero_flux() {
    for (name, sheet) in preset_catalog(64).unwrap() {
        let zeta_rho = sheet.vorticity().zeta_rho();
        let c = sheet.vorticity().theta_constant();
        let v_rho = vec![c; zeta_rho.len()];
        let v_theta: Vec<f64> = zeta_rho.iter().map(|z| -z).collect();
        let d = flux_derivative(&sheet, &v_rho, &v_theta).unwrap();
        assert!(d.abs() < 1e-14, "{name}: {d}");
    }
}

#[test]
fn rotation_and_rescaled_radial_fields() {
    let mer = torus(Fibration::Meridians, 32);
    let n = mer.grid().len();
    let d = flux_derivative(&mer, &vec![0.0; n], &vec![1.0; n]).unwrap();
    assert!((d + 1.0 / TAU).abs() < 1e-15);

    let par = torus(Fibration::ParallelCircles, 32);
    let v_rho: Vec<f64> = par.vorticity().zeta_rho().iter().map(|z| 1.0 / z).collect();
    let d = flux_derivative(&par, &v_rho, &vec![0.0; n]).unwrap();
    assert!((d + 1.0).abs() < 1e-14);
}

#[test]
fn fields_outside_the_isotropy_are_rejected() {
    let (_, s) = preset_catalog(64)
        .unwrap()
        .into_iter()
        .find(|(name, _)| *name == "lobed")
        .unwrap();
    let n = s.grid().len();
    assert!(matches!(
        flux_derivative(&s, &vec![1.0; n], &vec![0.0; n]),
        Err(Error::NotInIsotropy { .. })
    ));
    assert!(matches!(
        flux_derivative(&s, &[1.0; 8], &[0.0; 8]),
        Err(Error::Contract(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn map_is_a_homomorphism(k in 1i64..40, ell in 0.1..10.0f64, x in -50.0..50.0f64, y in -50.0..50.0f64) {
        let (a, ell) = quantized(k, ell);
        let lhs = m_a_map(x + y, a, ell).unwrap();
        let rhs = m_a_map(x, a, ell).unwrap() + m_a_map(y, a, ell).unwrap();
        prop_assert!(circle_distance(lhs, rhs) < 1e-8);
        prop_assert!((0.0..TAU).contains(&lhs));
    }

    #[test]
    fn kernel_has_k_elements(k in 1i64..60, ell in 0.1..10.0f64) {
        let (a, ell) = quantized(k, ell);
        let kernel = kernel_elements(a, ell).unwrap();
        prop_assert_eq!(kernel.len() as i64, k);
        for z in &kernel {
            prop_assert!(circle_distance(m_a_map(*z, a, ell).unwrap(), 0.0) < 1e-9);
        }
        prop_assert_eq!(kernel_order(a, ell).unwrap(), k);
    }

    #[test]
    fn map_is_surjective(k in 1i64..20, ell in 0.1..10.0f64, target in 0.0..TAU) {
        // z = target / a hits every angle
        let (a, ell) = quantized(k, ell);
        prop_assert!(circle_distance(m_a_map(target / a, a, ell).unwrap(), target) < 1e-9);
    }

    #[test]
    fn report_is_grid_independent(r_big in 1.5..4.0f64, ell in 0.2..5.0f64) {
        let build = |n| make_torus_preset(r_big, 1.0, Fibration::ParallelCircles, ell, Grid::new(n).unwrap()).unwrap();
        let coarse = onsager_feynman(&build(16)).unwrap();
        let fine = onsager_feynman(&build(256)).unwrap();
        prop_assert!((coarse.product_over_2pi - fine.product_over_2pi).abs() < 1e-12 * fine.product_over_2pi);
        prop_assert_eq!(coarse.k, fine.k);
    }
}
