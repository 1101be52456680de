use gravsim_core::clock::{accumulated_dilation, relative_dilation, relative_dilation_ep, ClockComparison, OscillatorClock};
use gravsim_core::interferometer::{
    arm_differential_phase, build_geometry, fringe_fall_picture, fringe_scan, gravimeter_phase, output_populations,
    phase_compton_form, phase_debroglie_form, section_differential_phase, GravimetrySetup, ScanParameter,
};
use gravsim_core::phase::{
    differential_phase, path_phase, phase_form_energy, phase_form_energy_ratio, phase_form_ratio,
    phase_form_wavelength, segment_phase, Path, PathSegment,
};
use gravsim_core::physics::{
    compton_form_of_debroglie, de_broglie_wavelength, AtomSpecies, PhysicalConstants, UniformGravityField,
};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn si() -> PhysicalConstants {
    PhysicalConstants::codata2018()
}

fn mass() -> impl Strategy<Value = f64> {
    (-27.0..-24.0f64).prop_map(|e| 10f64.powf(e))
}

prop_compose! {
    fn species()(m in mass(), eta in 0.0..2.0f64) -> AtomSpecies {
        AtomSpecies::new("X", m, eta * m, 9.0e9).unwrap()
    }
}

prop_compose! {
    fn ep_species()(m in mass()) -> AtomSpecies {
        AtomSpecies::equivalent("X", m, 9.0e9).unwrap()
    }
}

prop_compose! {
    fn cs_like_setup()(
        sp in ep_species(),
        g in 0.1..30.0f64,
        kappa in prop_oneof![1e5..1e8f64, -1e8..-1e5f64],
        t in 1e-3..2.0f64,
        v0 in -5.0..5.0f64,
    ) -> GravimetrySetup {
        GravimetrySetup::new(sp, g, kappa, t, v0).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn three_phase_forms_agree(
        sp in species(),
        x in -100.0..100.0f64,
        t in 1e-3..10.0f64,
        v in 1e-3..1e3f64,
        g in 0.1..30.0f64,
        phi0 in -10.0..10.0f64,
    ) {
        let k = si();
        let field = UniformGravityField::new(g).with_origin_potential(phi0);
        let seg = PathSegment::with_speed(x, t, v).unwrap();
        let direct = segment_phase(&seg, &sp, &field, &k).unwrap();
        for form in [
            phase_form_energy(&seg, &sp, &field, &k).unwrap(),
            phase_form_wavelength(&seg, &sp, &field, &k).unwrap(),
            phase_form_ratio(&seg, &sp, &field, &k).unwrap(),
            phase_form_energy_ratio(&seg, &sp, &field, &k).unwrap(),
        ] {
            prop_assert!(rel(direct, form) <= 1e-12, "{direct} vs {form}");
        }
    }

    #[test]
    fn path_phase_is_additive(
        sp in species(),
        xs in prop::collection::vec(-10.0..10.0f64, 1..20),
        cut in 0usize..20,
        g in 0.1..30.0f64,
    ) {
        let k = si();
        let field = UniformGravityField::new(g);
        let segs: Vec<_> = xs.iter().map(|&x| PathSegment::new(x, 0.01).unwrap()).collect();
        let cut = cut.min(segs.len() - 1).max(1).min(segs.len());
        let whole = path_phase(&Path::new(segs.clone()).unwrap(), &sp, &field, &k).unwrap();
        let sum: f64 = whole.breakdown.iter().sum();
        prop_assert_eq!(whole.phase, sum);
        if cut < segs.len() {
            let a = path_phase(&Path::new(segs[..cut].to_vec()).unwrap(), &sp, &field, &k).unwrap();
            let b = path_phase(&Path::new(segs[cut..].to_vec()).unwrap(), &sp, &field, &k).unwrap();
            let scale = whole.breakdown.iter().map(|p| p.abs()).sum::<f64>();
            prop_assert!((a.phase + b.phase - whole.phase).abs() <= 1e-13 * scale.max(f64::MIN_POSITIVE));
        }
    }

    #[test]
    fn differential_phase_is_gauge_invariant(
        sp in species(),
        xa in -10.0..10.0f64,
        xb in -10.0..10.0f64,
        g in 0.1..30.0f64,
        phi0 in -1e3..1e3f64,
    ) {
        let k = si();
        let a = Path::stationary(xa, 0.1).unwrap();
        let b = Path::stationary(xb, 0.1).unwrap();
        let plain = differential_phase(&a, &b, &sp, &UniformGravityField::new(g), &k).unwrap();
        let shifted = differential_phase(&a, &b, &sp, &UniformGravityField::new(g).with_origin_potential(phi0), &k).unwrap();
        let absolute = sp.m_gravitational() * (phi0.abs() + g * 10.0) * 0.1 / k.hbar();
        prop_assert!((plain - shifted).abs() <= 1e-13 * absolute);
    }

    #[test]
    fn gravimeter_forms_agree(setup in cs_like_setup()) {
        let k = si();
        let a = gravimeter_phase(&setup).unwrap();
        let b = phase_debroglie_form(&setup).unwrap();
        let c = phase_compton_form(&setup, &k).unwrap();
        let f = fringe_fall_picture(&setup).unwrap();
        prop_assert!(rel(a, b) <= 1e-12);
        prop_assert!(rel(a, c) <= 1e-12);
        prop_assert!(rel(a, f.fringe_phase) <= 1e-12);
        prop_assert!(rel(f.fall_distance, 2.0 * setup.g() * setup.t() * setup.t()) <= 1e-15);
    }

    #[test]
    fn gravimeter_phase_is_linear_in_eta(setup in cs_like_setup(), eta in 1e-3..3.0f64) {
        let base = gravimeter_phase(&setup).unwrap();
        let scaled = setup.with_parameter(ScanParameter::Eta, eta).unwrap();
        prop_assert!(rel(gravimeter_phase(&scaled).unwrap() / base, eta) <= 1e-15);
    }

    #[test]
    fn path_recomputations_match(setup in cs_like_setup(), eta in 0.1..2.0f64) {
        let k = si();
        let setup = setup.with_parameter(ScanParameter::Eta, eta).unwrap();
        let closed = gravimeter_phase(&setup).unwrap();
        let sections = section_differential_phase(&setup, &k).unwrap();
        let geo = build_geometry(&setup, &k).unwrap();
        let arms = arm_differential_phase(&geo, &setup.field, &k).unwrap();
        prop_assert!(rel(closed, sections) <= 1e-9, "{closed} {sections}");
        prop_assert!(rel(closed, arms) <= 1e-9, "{closed} {arms}");
    }

    #[test]
    fn arms_close(setup in cs_like_setup()) {
        let geo = build_geometry(&setup, &si()).unwrap();
        let (u, l) = geo.positions_at(2.0 * setup.t());
        prop_assert!((u - l).abs() <= 1e-12 * geo.separation_l.abs().max(1e-300) + 1e-12 * u.abs());
        let (u0, l0) = geo.positions_at(0.0);
        prop_assert_eq!(u0, l0);
    }

    #[test]
    fn populations_sum_to_one(phase in -1e7..1e7f64, vis in 0.0..=1.0f64) {
        let p = output_populations(phase, vis).unwrap();
        prop_assert_eq!(p.p_a + p.p_b, 1.0);
        prop_assert!((0.0..=1.0).contains(&p.p_a));
    }

    #[test]
    fn scan_matches_direct_calls(setup in cs_like_setup(), ts in prop::collection::vec(1e-3..1.0f64, 1..16)) {
        let rows = fringe_scan(&setup, ScanParameter::T, &ts).unwrap();
        prop_assert_eq!(rows.len(), ts.len());
        for (row, &t) in rows.iter().zip(&ts) {
            prop_assert_eq!(row.value, t);
            let direct = gravimeter_phase(&setup.with_parameter(ScanParameter::T, t).unwrap()).unwrap();
            prop_assert_eq!(row.phase, direct);
        }
    }

    #[test]
    fn compton_form_of_wavelength_is_de_broglie(sp in ep_species(), l in 1e-6..1.0f64, t in 1e-3..2.0f64) {
        let k = si();
        let a = compton_form_of_debroglie(&sp, l, t, &k).unwrap();
        let b = de_broglie_wavelength(&sp, l / t, &k).unwrap();
        prop_assert!(rel(a, b) <= 1e-12);
    }

    #[test]
    fn accumulated_dilation_ignores_frequency(
        x in -1e3..1e3f64,
        t in 1e-3..1e4f64,
        nu in 1e6..1e15f64,
        k in 1e-3..1e3f64,
    ) {
        let c = si();
        let field = UniformGravityField::new(9.8);
        let sp = AtomSpecies::preset("Cs-133").unwrap();
        let a = OscillatorClock::new(nu, x, sp.clone()).unwrap();
        let b = OscillatorClock::new(k * nu, x, sp).unwrap();
        let da = accumulated_dilation(&a, &field, t, &c).unwrap();
        let db = accumulated_dilation(&b, &field, t, &c).unwrap();
        prop_assert!(rel(da, db) <= 1e-15);
    }

    #[test]
    fn relative_dilation_is_antisymmetric_and_eta_scaled(
        xa in -1e3..1e3f64,
        xb in -1e3..1e3f64,
        eta in 0.0..2.0f64,
    ) {
        let c = si();
        let field = UniformGravityField::new(9.8);
        let sp = AtomSpecies::preset("Cs-133").unwrap().with_ep_ratio(eta).unwrap();
        let cmp = ClockComparison::new(
            OscillatorClock::on_transition(sp.clone(), xa).unwrap(),
            OscillatorClock::on_transition(sp, xb).unwrap(),
            1.0,
        )
        .unwrap();
        let d = relative_dilation(&cmp, &field, &c).unwrap();
        prop_assert_eq!(relative_dilation(&cmp.swapped(), &field, &c).unwrap(), -d);
        let ep = relative_dilation_ep(&cmp, &field, &c).unwrap();
        prop_assert!((ep - eta * d).abs() <= 1e-15 * d.abs());
    }
}
