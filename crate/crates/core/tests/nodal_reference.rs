//! Nod coefficients and functions against extended-precision references.

mod common;

use common::{dd, f, find, fixture, floats};
use shiftriesz::nodal::{
    gauss_c, gauss_nod_coefficients, interpolate, lorentz_nod_coefficients, nod_coefficients, nod_function_eval,
    sinc_distance_closed_form, DEFAULT_TAIL_TOLERANCE,
};
use shiftriesz::oracle::{nod_function_fourier_quadrature, sinc_distance_quadrature};
use shiftriesz::systems::{mask_phi, Family, GeneratorSpec};
use std::collections::BTreeMap;

#[test]
fn gauss_coefficients_to_double_double() {
    for case in fixture()["gauss_nod"].as_array().unwrap() {
        let s = f(&case["sigma"]);
        let c = gauss_c(s, DEFAULT_TAIL_TOLERANCE).unwrap();
        let want_c = dd(&case["c"]);
        assert!(((c - want_c) / want_c).to_f64().abs() < 1e-28, "C({s})");
        let coeffs = gauss_nod_coefficients(s, 40, DEFAULT_TAIL_TOLERANCE).unwrap();
        for (k, want) in case["k"].as_array().unwrap().iter().zip(case["d"].as_array().unwrap()) {
            let k = k.as_i64().unwrap();
            let want = dd(want);
            let got = coeffs.get_extended(k).unwrap();
            let err = ((got - want) / want).to_f64().abs();
            assert!(err < 1e-26, "σ={s} k={k}: rel err {err:e}");
        }
        assert!(coeffs.sign_alternation_violations().is_empty(), "σ={s}");
    }
}

#[test]
fn lorentz_coefficients_match_reference() {
    for case in fixture()["lorentz_nod"].as_array().unwrap() {
        let s = f(&case["sigma"]);
        let coeffs = lorentz_nod_coefficients(s, 40, 1e-13).unwrap();
        let scale = (s * std::f64::consts::PI).sinh();
        for (k, want) in case["k"].as_array().unwrap().iter().zip(floats(&case["d"])) {
            let k = k.as_i64().unwrap();
            let got = coeffs.get(k).unwrap();
            assert!((got - want).abs() < 1e-12 * scale, "σ={s} k={k}: {got} vs {want}");
        }
    }
    let d0 = lorentz_nod_coefficients(1.0, 1, 1e-14).unwrap().get(0).unwrap();
    let want = std::f64::consts::PI.sinh() / std::f64::consts::PI.powi(2) * f(&fixture()["misc"]["int_sech_0_pi"]);
    assert!((d0 - want).abs() < 1e-13);
}

#[test]
fn lorentz_signs_are_reported_not_assumed() {
    let coeffs = lorentz_nod_coefficients(1.0, 30, 1e-12).unwrap();
    let bad = coeffs.sign_alternation_violations();
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|&k| k > 5), "{bad:?}");
}

#[test]
fn nod_residuals_match_exact_truncation() {
    for case in fixture()["nod_residual_exact"].as_array().unwrap() {
        let family: Family = case["family"].as_str().unwrap().parse().unwrap();
        let s = f(&case["sigma"]);
        let spec = GeneratorSpec::new(family, s).unwrap();
        let coeffs = nod_coefficients(&spec, 40).unwrap();
        for (m, want) in case["m"].as_array().unwrap().iter().zip(floats(&case["residual"])) {
            let m = m.as_i64().unwrap() as f64;
            let delta = if m == 0.0 { 1.0 } else { 0.0 };
            let got = nod_function_eval(&coeffs, m) - delta;
            let tol = match family {
                Family::Gauss => 1e-13,
                Family::Lorentz => 1e-10,
            };
            assert!((got - want).abs() < tol, "{family} σ={s} m={m}: {got:e} vs {want:e}");
            let mirrored = nod_function_eval(&coeffs, -m) - delta;
            assert!((mirrored - got).abs() < 1e-12);
        }
    }
}

#[test]
fn mask_duality_matches_exact_truncation() {
    for case in fixture()["mask_duality_exact"].as_array().unwrap() {
        let family: Family = case["family"].as_str().unwrap().parse().unwrap();
        let spec = GeneratorSpec::new(family, 1.0).unwrap();
        let coeffs = nod_coefficients(&spec, 30).unwrap();
        for (t, want) in floats(&case["t"]).into_iter().zip(floats(&case["residual"])) {
            let got = coeffs.mask(t) * mask_phi(&spec, t).unwrap() - 1.0;
            assert!((got - want).abs() < 1e-11, "{family} t={t}: {got:e} vs {want:e}");
        }
    }
}

#[test]
fn nod_function_examples() {
    for family in [Family::Gauss, Family::Lorentz] {
        let coeffs = nod_coefficients(&GeneratorSpec::new(family, 1.0).unwrap(), 30).unwrap();
        assert!((nod_function_eval(&coeffs, 0.0) - 1.0).abs() < 1e-5);
        // truncated Lorentz value is 2.4e-6 in exact arithmetic
        assert!(nod_function_eval(&coeffs, 3.0).abs() < 3e-6, "{family}");
        for t in [0.3, 1.7, 4.2] {
            assert!((nod_function_eval(&coeffs, t) - nod_function_eval(&coeffs, -t)).abs() < 1e-12);
        }
    }
    let spec = GeneratorSpec::lorentz(2.0).unwrap();
    let coeffs = nod_coefficients(&spec, 40).unwrap();
    let want = f(&fixture()["lorentz_nod_freq"]["value"]);
    let freq = nod_function_fourier_quadrature(&spec, 0.5, 1e-12).unwrap();
    assert!((freq - want).abs() < 1e-10);
    assert!((nod_function_eval(&coeffs, 0.5) - freq).abs() < 1e-4);
}

#[test]
fn interpolation_examples() {
    let coeffs = nod_coefficients(&GeneratorSpec::lorentz(3.0).unwrap(), 40).unwrap();
    let samples: BTreeMap<i64, f64> = (-20..=20).map(|n| (n, (std::f64::consts::PI * n as f64 / 6.0).sin())).collect();
    let got = interpolate(&coeffs, &samples, 2.0).unwrap();
    assert!((got - (std::f64::consts::PI / 3.0).sin()).abs() < 1e-4, "{got}");

    let gauss = nod_coefficients(&GeneratorSpec::gauss(1.0).unwrap(), 30).unwrap();
    let unit = BTreeMap::from([(0, 1.0)]);
    assert!((interpolate(&gauss, &unit, 0.0).unwrap() - 1.0).abs() < 1e-8);
    let c = 2.5;
    let constant: BTreeMap<i64, f64> = (-10..=10).map(|n| (n, c)).collect();
    for m in -3..=3 {
        let v = interpolate(&gauss, &constant, m as f64).unwrap();
        assert!((v - c).abs() < 1e-8 * 21.0 * c);
    }
}

#[test]
fn sinc_distance_matches_quadrature() {
    for case in fixture()["sinc_distance"].as_array().unwrap() {
        let s = f(&case["sigma"]);
        let closed = sinc_distance_closed_form(s).unwrap();
        assert!((closed - f(&case["closed_form"])).abs() < 1e-14, "σ={s}");
        if s <= 2.0 {
            let quad = sinc_distance_quadrature(s, 1e-11).unwrap();
            assert!((closed - quad).abs() < 1e-8, "σ={s}: {closed} vs {quad}");
        }
    }
    let at5 = find("sinc_distance", |v| f(&v["sigma"]) == 5.0);
    assert!((sinc_distance_closed_form(5.0).unwrap() - f(&at5["quadrature"])).abs() < 1e-12);
}
