use std::ffi::{CStr, CString};
use std::ptr;

use gravsim_ffi::*;

fn last_error() -> String {
    let p = gravsim_last_error_message();
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { gravsim_string_free(p) };
    s
}

fn cs() -> *mut GravsimSpecies {
    let label = CString::new("Cs-133").unwrap();
    let mut sp = ptr::null_mut();
    assert_eq!(unsafe { gravsim_species_preset(label.as_ptr(), &mut sp) }, GravsimStatus::Ok);
    sp
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(gravsim_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn gravimeter_forms_agree() {
    let sp = cs();
    let mut setup = ptr::null_mut();
    unsafe {
        assert_eq!(gravsim_setup_new(sp, 9.8, 1.4748e7, 0.1, 0.0, &mut setup), GravsimStatus::Ok);
        let (mut a, mut b, mut c, mut l) = (0.0, 0.0, 0.0, 0.0);
        assert_eq!(gravsim_gravimeter_phase(setup, &mut a), GravsimStatus::Ok);
        assert_eq!(gravsim_phase_debroglie_form(setup, &mut b), GravsimStatus::Ok);
        assert_eq!(gravsim_phase_compton_form(setup, &mut c), GravsimStatus::Ok);
        assert_eq!(gravsim_separation(setup, &mut l), GravsimStatus::Ok);
        assert!((a + 1.445304e6).abs() < 1e-3);
        assert!(((a - b) / a).abs() <= 1e-12);
        assert!(((a - c) / a).abs() <= 1e-12);
        assert!((l - 7.04721296e-4).abs() < 1e-12);
        gravsim_setup_free(setup);
        gravsim_species_free(sp);
    }
}

#[test]
fn ep_violation_is_reported() {
    let label = CString::new("heavy").unwrap();
    let mut sp = ptr::null_mut();
    let mut setup = ptr::null_mut();
    unsafe {
        assert_eq!(gravsim_species_new(label.as_ptr(), 1e-25, 0.5e-25, 1e9, &mut sp), GravsimStatus::Ok);
        let mut eta = 0.0;
        assert_eq!(gravsim_species_ep_ratio(sp, &mut eta), GravsimStatus::Ok);
        assert_eq!(eta, 0.5);
        assert_eq!(gravsim_setup_new(sp, 9.8, 1e7, 0.1, 0.0, &mut setup), GravsimStatus::Ok);
        let mut out = 0.0;
        assert_eq!(gravsim_phase_debroglie_form(setup, &mut out), GravsimStatus::EquivalencePrinciple);
        assert!(last_error().contains("gravimeter_phase"));
        assert_eq!(gravsim_gravimeter_phase(setup, &mut out), GravsimStatus::Ok);
        assert!(gravsim_last_error_message().is_null());
        assert!((out + 0.5 * 1e7 * 9.8 * 0.01).abs() < 1e-6);
        gravsim_setup_free(setup);
        gravsim_species_free(sp);
    }
}

#[test]
fn bad_inputs() {
    let mut sp = ptr::null_mut();
    unsafe {
        assert_eq!(gravsim_species_preset(ptr::null(), &mut sp), GravsimStatus::NullPointer);
        let unknown = CString::new("Xe-131").unwrap();
        assert_eq!(gravsim_species_preset(unknown.as_ptr(), &mut sp), GravsimStatus::Domain);
        assert!(sp.is_null());
        let s = cs();
        let mut setup = ptr::null_mut();
        assert_eq!(gravsim_setup_new(s, 9.8, 1e7, -1.0, 0.0, &mut setup), GravsimStatus::Domain);
        assert_eq!(gravsim_gravimeter_phase(ptr::null(), ptr::null_mut()), GravsimStatus::NullPointer);
        let (mut a, mut b) = (0.0, 0.0);
        assert_eq!(gravsim_output_populations(0.0, 2.0, &mut a, &mut b), GravsimStatus::Domain);
        gravsim_species_free(s);
        gravsim_species_free(ptr::null_mut());
        gravsim_string_free(ptr::null_mut());
    }
}

#[test]
fn scalar_helpers() {
    unsafe {
        let (mut pa, mut pb) = (0.0, 0.0);
        assert_eq!(gravsim_output_populations(0.0, 1.0, &mut pa, &mut pb), GravsimStatus::Ok);
        assert_eq!((pa, pb), (1.0, 0.0));
        let mut dt = 0.0;
        assert_eq!(gravsim_relative_dilation(9.8, 1.0, 0.0, 1.0, &mut dt), GravsimStatus::Ok);
        assert!((dt - 1.0904e-16).abs() < 1e-20);
        let mut phi = 0.0;
        assert_eq!(gravsim_photon_double_slit_phase(5e14, 1.0, 10.0 / 299_792_458.0, 9.8, &mut phi), GravsimStatus::Ok);
        assert!((phi.abs() - 1.14e-8).abs() < 1e-10);
    }
}

#[test]
fn oracle_through_repr_c() {
    let mut params = gravsim_oracle_params_standard();
    params.dt = 1.0 / 200.0;
    let mut r = GravsimOracleResult::default();
    unsafe {
        assert_eq!(gravsim_oracle_run(&params, &mut r), GravsimStatus::Ok);
    }
    assert!(r.deviation < 1e-6, "{r:?}");
    assert_eq!(r.analytic_phase, -5.0);
    params.n_grid = 64;
    unsafe {
        assert_eq!(gravsim_oracle_run(&params, &mut r), GravsimStatus::Config);
    }
}

#[test]
fn scenario_round_trip() {
    let kind = CString::new("clock-compare").unwrap();
    let body = CString::new(r#"{"g_mps2": 9.8, "clock_a": {"x_m": 1.0}, "clock_b": {"x_m": 0.0}, "duration_s": 1.0}"#)
        .unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(gravsim_run_scenario(kind.as_ptr(), body.as_ptr(), GravsimFormat::Csv, &mut out), GravsimStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_string();
        gravsim_string_free(out);
        assert!(text.contains("result,relative_dilation,1.09039705493e-16,s"));

        let bad = CString::new(r#"{"g_mps2": "up"}"#).unwrap();
        assert_eq!(gravsim_run_scenario(kind.as_ptr(), bad.as_ptr(), GravsimFormat::Json, &mut out), GravsimStatus::Schema);
        assert!(last_error().contains("g_mps2"));
        let wrong = CString::new("levitation").unwrap();
        assert_eq!(gravsim_run_scenario(wrong.as_ptr(), body.as_ptr(), GravsimFormat::Csv, &mut out), GravsimStatus::Usage);
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/gravsim.h")).unwrap();
    for symbol in ["gravsim_oracle_run", "GRAVSIM_STATUS_EQUIVALENCE_PRINCIPLE", "typedef struct GravsimSetup GravsimSetup"] {
        assert!(header.contains(symbol), "{symbol}");
    }
}
