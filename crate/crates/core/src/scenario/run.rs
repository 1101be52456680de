use std::time::Instant;

use serde_json::Value;

use super::body::{ClockCompareBody, ComptonCompareBody, DoubleSlitBody, GravimeterBody, OracleVerifyBody};
use super::report::{IdentityCheck, RunReport};
use super::ScenarioKind;
use crate::clock::{
    accumulated_dilation, clock_phase, compton_time_resolution, relative_dilation, relative_dilation_ep,
    ClockComparison, OscillatorClock,
};
use crate::error::Result;
use crate::interferometer::{
    arm_differential_phase, build_geometry_with, fringe_fall_picture, fringe_scan, gravimeter_phase,
    output_populations, phase_compton_form, phase_debroglie_form, section_differential_phase,
};
use crate::oracle::{
    double_slit_propagate, extract_fringe_spacing, fringe_visibility, run_interferometer_numeric, wrap_phase,
    DoubleSlitProfile, DoubleSlitSetup,
};
use crate::physics::{
    compton_angular_frequency, mass_to_photon_sensitivity_ratio, PhysicalConstants, UniformGravityField,
};

/// Identities between closed forms that are algebraically equal.
const FORM_TOLERANCE: f64 = 1e-12;
/// Closed form against a sum over discretized paths.
const PATH_TOLERANCE: f64 = 1e-9;
const SPACING_TOLERANCE: f64 = 0.01;
const MASS_SCALING_TOLERANCE: f64 = 0.02;
const FREQUENCY_TOLERANCE: f64 = 1e-15;

/// A report plus, for double-slit runs, the screen profile.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: RunReport,
    pub profile: Option<DoubleSlitProfile>,
}

/// Parses `body` for `kind` and runs it.
pub fn run_body(kind: ScenarioKind, body: Value, constants: &PhysicalConstants) -> Result<RunOutput> {
    let report = match kind {
        ScenarioKind::Gravimeter => run_gravimeter(&GravimeterBody::from_value(body)?, constants)?,
        ScenarioKind::ComptonCompare => run_compton_compare(&ComptonCompareBody::from_value(body)?, constants)?,
        ScenarioKind::ClockCompare => run_clock_compare(&ClockCompareBody::from_value(body)?, constants)?,
        ScenarioKind::OracleVerify => run_oracle_verify(&OracleVerifyBody::from_value(body)?)?,
        ScenarioKind::DoubleSlit => return run_double_slit(&DoubleSlitBody::from_value(body)?),
    };
    Ok(RunOutput { report, profile: None })
}

pub fn run_gravimeter(body: &GravimeterBody, constants: &PhysicalConstants) -> Result<RunReport> {
    let start = Instant::now();
    let setup = body.setup()?;
    let scan = body.scan()?;
    let mut report = RunReport::new(ScenarioKind::Gravimeter, body.resolved(&setup));
    report.warnings.extend(setup.warnings());

    let phase = gravimeter_phase(&setup)?;
    let geometry = build_geometry_with(&setup, body.n_segments, constants)?;
    let sections = section_differential_phase(&setup, constants)?;
    let arms = arm_differential_phase(&geometry, &setup.field, constants)?;
    report.push("gravimeter_phase", phase, "rad");
    report.push("separation_l", geometry.separation_l, "m");
    report.push("section_phase", sections, "rad");
    report.push("arm_path_phase", arms, "rad");
    report.identity_checks.push(IdentityCheck::relative(
        "path_recomputation",
        &[("eta-kappa-g-T2", phase), ("sections", sections), ("arm-paths", arms)],
        PATH_TOLERANCE,
    ));

    if setup.eta() == 1.0 {
        let de_broglie = phase_debroglie_form(&setup)?;
        let compton = phase_compton_form(&setup, constants)?;
        let fall = fringe_fall_picture(&setup)?;
        report.push("phase_debroglie_form", de_broglie, "rad");
        report.push("phase_compton_form", compton, "rad");
        report.push("fringe_fall_distance", fall.fall_distance, "m");
        report.push("fringe_fall_phase", fall.fringe_phase, "rad");
        report.identity_checks.push(IdentityCheck::relative(
            "gravimeter_forms",
            &[("kappa-g-T2", phase), ("de-broglie", de_broglie), ("compton", compton), ("fringe-fall", fall.fringe_phase)],
            FORM_TOLERANCE,
        ));
    } else {
        report.notes.push(format!(
            "m_g/m_i = {}: the de Broglie, Compton and fringe-fall forms assume m_g = m_i and were not evaluated",
            setup.eta()
        ));
    }

    let pops = output_populations(phase, body.visibility)?;
    report.push("phase_wrapped", wrap_phase(phase), "rad");
    report.push("p_a", pops.p_a, "1");
    report.push("p_b", pops.p_b, "1");

    if let Some((parameter, values)) = scan {
        report.fringe_table = Some(fringe_scan(&setup, parameter, values)?);
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn run_compton_compare(body: &ComptonCompareBody, constants: &PhysicalConstants) -> Result<RunReport> {
    let start = Instant::now();
    let setup = body.setup()?;
    let mut report = RunReport::new(ScenarioKind::ComptonCompare, body.resolved(&setup));
    report.warnings.extend(setup.warnings());

    let phase = gravimeter_phase(&setup)?;
    let t = setup.t();
    let l = constants.hbar() * setup.kappa() * t / setup.species.m_inertial();
    let compton = compton_time_resolution(&setup.species, -phase, constants);

    let top = OscillatorClock::on_transition(setup.species.clone(), l)?;
    let bottom = OscillatorClock::on_transition(setup.species.clone(), 0.0)?;
    let cmp = ClockComparison::new(top, bottom, t)?;
    let clock = relative_dilation(&cmp, &setup.field, constants)?;
    let ratio = mass_to_photon_sensitivity_ratio(&setup.species, setup.species.nu0(), constants)?;

    report.push("gravimeter_phase", phase, "rad");
    report.push("separation_l", l, "m");
    report.push("compton_angular_frequency", compton_angular_frequency(&setup.species, constants), "rad/s");
    report.push("compton_time_resolution", compton.seconds, "s");
    report.push("clock_relative_dilation", clock, "s");
    report.push("mass_to_clock_energy_ratio", ratio, "1");
    if setup.eta() == 1.0 {
        report.identity_checks.push(IdentityCheck::relative(
            "compton_time_vs_clock",
            &[("phase-over-omega-c", compton.seconds), ("g-l-T-over-c2", clock)],
            FORM_TOLERANCE,
        ));
    }
    report.notes.push(
        "compton_time_resolution is the phase divided by m c^2 / hbar: a change of the unit of mass, not the \
         reading of a clock. It matches g l T / c^2 identically because l = hbar kappa T / m."
            .into(),
    );
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn run_clock_compare(body: &ClockCompareBody, constants: &PhysicalConstants) -> Result<RunReport> {
    let start = Instant::now();
    body.validate()?;
    let species = body.species()?;
    let mut report = RunReport::new(ScenarioKind::ClockCompare, body.resolved(&species));
    let field = UniformGravityField::new(body.g_mps2).with_origin_potential(body.origin_potential_m2ps2);

    let nu_a = body.clock_a.nu_hz.unwrap_or(species.nu0());
    let nu_b = body.clock_b.nu_hz.unwrap_or(species.nu0());
    let a = OscillatorClock::new(nu_a, body.clock_a.x_m, species.clone())?;
    let b = OscillatorClock::new(nu_b, body.clock_b.x_m, species.clone())?;
    let cmp = ClockComparison::new(a.clone(), b.clone(), body.duration_s)?;
    let t = body.duration_s;

    let rel = relative_dilation(&cmp, &field, constants)?;
    let rel_ep = relative_dilation_ep(&cmp, &field, constants)?;
    let acc_a = accumulated_dilation(&a, &field, t, constants)?;
    let acc_b = accumulated_dilation(&b, &field, t, constants)?;
    report.push("height_difference", body.clock_a.x_m - body.clock_b.x_m, "m");
    report.push("relative_dilation", rel, "s");
    report.push("relative_dilation_ep", rel_ep, "s");
    report.push("clock_a_phase", clock_phase(&a, &field, t, constants)?, "rad");
    report.push("clock_b_phase", clock_phase(&b, &field, t, constants)?, "rad");
    report.push("clock_a_accumulated_dilation", acc_a, "s");
    report.push("clock_b_accumulated_dilation", acc_b, "s");
    report.identity_checks.push(IdentityCheck::relative(
        "dilation_difference",
        &[("T-g-l-over-c2", rel), ("accumulated-a-minus-b", acc_a - acc_b)],
        PATH_TOLERANCE,
    ));

    let mut forms = vec![("nu".to_string(), acc_a)];
    for &k in &body.frequency_factors {
        let scaled = OscillatorClock::new(k * nu_a, body.clock_a.x_m, species.clone())?;
        forms.push((format!("{k}nu"), accumulated_dilation(&scaled, &field, t, constants)?));
    }
    let borrowed: Vec<(&str, f64)> = forms.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    report.identity_checks.push(IdentityCheck::relative("frequency_independence", &borrowed, FREQUENCY_TOLERANCE));
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn run_oracle_verify(body: &OracleVerifyBody) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = RunReport::new(ScenarioKind::OracleVerify, body.resolved());
    let outcome = run_interferometer_numeric(&body.params)?;
    let d = &outcome.diagnostics;
    report.push("numeric_phase", outcome.phase, "rad");
    report.push("closed_form_phase", d.analytic_phase, "rad");
    report.push("closed_form_phase_wrapped", wrap_phase(d.analytic_phase), "rad");
    report.push("deviation", d.deviation, "rad");
    report.push("p_a", outcome.p_a, "1");
    report.push("p_b", outcome.p_b, "1");
    report.push("branch_overlap", d.overlap_magnitude, "1");
    report.push("norm_error", d.norm_error, "1");
    report.push("grid_points", d.grid.n() as f64, "count");
    report.push("grid_dx", d.grid.dx(), "scaled");
    report.push("steps_per_interval", d.steps_per_interval as f64, "count");
    report.identity_checks.push(IdentityCheck::absolute(
        "numeric_vs_closed_form",
        &["split-step", "eta-kappa-g-T2"],
        d.deviation,
        body.tolerance_rad,
    ));
    report.warnings.extend(d.warnings.iter().cloned());
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

pub fn run_double_slit(body: &DoubleSlitBody) -> Result<RunOutput> {
    let start = Instant::now();
    let profile = double_slit_propagate(&body.setup, &body.options)?;
    let spacing = extract_fringe_spacing(&profile.intensity, &profile.grid)?;
    let visibility = fringe_visibility(&profile.intensity);

    let heavy = DoubleSlitSetup { mass: body.setup.mass * body.mass_factor, ..body.setup };
    let heavy_profile = double_slit_propagate(&heavy, &body.options)?;
    let heavy_spacing = extract_fringe_spacing(&heavy_profile.intensity, &heavy_profile.grid)?;

    let mut report = RunReport::new(ScenarioKind::DoubleSlit, body.resolved(profile.grid.n(), profile.grid.x_max()));
    report.push("de_broglie_wavelength", body.setup.de_broglie_wavelength(), "scaled");
    report.push("propagation_distance", body.setup.propagation_distance(), "scaled");
    report.push("expected_spacing", profile.expected_spacing, "scaled");
    report.push("measured_spacing", spacing, "scaled");
    report.push("far_field_ratio", profile.far_field_ratio, "1");
    report.push("visibility", visibility, "1");
    report.push("heavy_expected_spacing", heavy_profile.expected_spacing, "scaled");
    report.push("heavy_measured_spacing", heavy_spacing, "scaled");
    report.push("spacing_ratio", heavy_spacing / spacing, "1");
    report.identity_checks.push(IdentityCheck::relative(
        "fraunhofer_spacing",
        &[("lambda-L-over-d", profile.expected_spacing), ("numeric", spacing)],
        SPACING_TOLERANCE,
    ));
    report.identity_checks.push(IdentityCheck::relative(
        "mass_scaling",
        &[("inverse-mass-factor", 1.0 / body.mass_factor), ("numeric-ratio", heavy_spacing / spacing)],
        MASS_SCALING_TOLERANCE,
    ));
    report.warnings.extend(profile.warnings.iter().cloned());
    report.warnings.extend(heavy_profile.warnings.iter().map(|w| format!("heavy run: {w}")));
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(RunOutput { report, profile: Some(profile) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::preset;
    use serde_json::json;

    fn constants() -> PhysicalConstants {
        PhysicalConstants::codata2018()
    }

    fn run(kind: ScenarioKind, name: &str) -> RunOutput {
        run_body(kind, preset(name, kind).unwrap().body, &constants()).unwrap()
    }

    #[test]
    fn cs_gravimeter_preset() {
        let r = run(ScenarioKind::Gravimeter, "cs-gravimeter").report;
        let phase = r.result("gravimeter_phase").unwrap();
        assert!((phase + 1.445304e6).abs() < 1.0);
        assert!(r.check("gravimeter_forms").unwrap().max_deviation <= 1e-12);
        assert!(r.passed());
        let pa = r.result("p_a").unwrap();
        let pb = r.result("p_b").unwrap();
        assert_eq!(pa + pb, 1.0);
    }

    #[test]
    fn eta_zero_gives_zero_phases() {
        let mut body = preset("cs-gravimeter", ScenarioKind::Gravimeter).unwrap().body;
        body["eta"] = json!(0.0);
        let r = run_body(ScenarioKind::Gravimeter, body, &constants()).unwrap().report;
        assert_eq!(r.result("gravimeter_phase").unwrap(), 0.0);
        assert_eq!(r.result("section_phase").unwrap(), 0.0);
        assert_eq!(r.result("arm_path_phase").unwrap(), 0.0);
        assert!(r.check("gravimeter_forms").is_none());
        assert!(r.passed());
    }

    #[test]
    fn eta_scan_table() {
        let r = run(ScenarioKind::Gravimeter, "cs-eta-scan").report;
        let rows = r.fringe_table.clone().unwrap();
        let full = r.result("gravimeter_phase").unwrap();
        assert_eq!(rows[0].phase, 0.0);
        assert!((rows[1].phase - 0.5 * full).abs() <= 1e-15 * full.abs());
        assert_eq!(rows[2].phase, full);
        assert!(r.fringe_csv().unwrap().starts_with("value,phase_rad,p_a,p_b\n"));
    }

    #[test]
    fn compton_compare_preset() {
        let r = run(ScenarioKind::ComptonCompare, "cs-compton").report;
        let dt = r.result("compton_time_resolution").unwrap();
        assert!((dt - 7.684260e-21).abs() < 1e-26, "{dt}");
        assert!((r.result("clock_relative_dilation").unwrap() - dt).abs() < 1e-32);
        assert!(r.passed());
        let ratio = r.result("mass_to_clock_energy_ratio").unwrap();
        assert!((ratio / 3.256397e15 - 1.0).abs() < 1e-6, "{ratio}");
    }

    #[test]
    fn compton_compare_eta_changes_phase_only_by_eta() {
        let base = run(ScenarioKind::ComptonCompare, "cs-compton").report;
        let mut body = preset("cs-compton", ScenarioKind::ComptonCompare).unwrap().body;
        body["eta"] = json!(0.5);
        let r = run_body(ScenarioKind::ComptonCompare, body, &constants()).unwrap().report;
        let p0 = base.result("gravimeter_phase").unwrap();
        assert_eq!(r.result("gravimeter_phase").unwrap(), 0.5 * p0);
        assert_eq!(r.result("clock_relative_dilation"), base.result("clock_relative_dilation"));
        assert_eq!(r.result("separation_l"), base.result("separation_l"));
    }

    #[test]
    fn missing_species_is_validation_error() {
        let err = run_body(
            ScenarioKind::ComptonCompare,
            json!({"g_mps2": 9.8, "kappa_rad_per_m": 1.0, "T_s": 0.1}),
            &constants(),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("species"));
    }

    #[test]
    fn clock_preset() {
        let r = run(ScenarioKind::ClockCompare, "clock-1m").report;
        assert!((r.result("relative_dilation").unwrap() - 1.0903970549e-16).abs() < 1e-26);
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn equal_heights_give_zero() {
        let body = json!({"g_mps2": 9.8, "clock_a": {"x_m": 3.0}, "clock_b": {"x_m": 3.0}, "duration_s": 1.0});
        let r = run_body(ScenarioKind::ClockCompare, body, &constants()).unwrap().report;
        assert_eq!(r.result("relative_dilation").unwrap(), 0.0);
    }

    #[test]
    fn oracle_g0() {
        let r = run(ScenarioKind::OracleVerify, "scaled-oracle-g0").report;
        assert!(r.result("deviation").unwrap() <= 1e-9);
        assert!(r.passed());
    }

    #[test]
    fn oracle_too_small_grid_is_runtime_error() {
        let err = run_body(ScenarioKind::OracleVerify, json!({"n_grid": 64}), &constants()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn double_slit_preset() {
        let out = run(ScenarioKind::DoubleSlit, "double-slit");
        let r = out.report;
        assert!(r.passed(), "{}", r.summary());
        assert!(out.profile.is_some());
        assert_eq!(r.inputs["n_grid"], json!(out.profile.unwrap().grid.n()));
    }
}
