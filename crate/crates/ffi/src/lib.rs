//! C ABI over `gravsim-core`.
//!
//! Every fallible call returns a [`GravsimStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be fetched with [`gravsim_last_error_message`]. Handles are opaque and
//! must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gravsim_core::clock::{relative_dilation, ClockComparison, OscillatorClock};
use gravsim_core::interferometer::{
    build_geometry, gravimeter_phase, output_populations, phase_compton_form, phase_debroglie_form, GravimetrySetup,
};
use gravsim_core::oracle::{photon_double_slit_phase, run_interferometer_numeric, OracleParams};
use gravsim_core::physics::{AtomSpecies, PhysicalConstants, UniformGravityField};
use gravsim_core::scenario::{run_body, ScenarioFile, ScenarioKind};
use gravsim_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GravsimStatus {
    Ok = 0,
    Domain = 1,
    EquivalencePrinciple = 2,
    Usage = 3,
    Config = 4,
    Boundary = 5,
    Analysis = 6,
    Schema = 7,
    Io = 8,
    NullPointer = 9,
    InvalidUtf8 = 10,
    Panic = 11,
}

impl From<&Error> for GravsimStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => GravsimStatus::Domain,
            Error::EquivalencePrincipleRequired { .. } => GravsimStatus::EquivalencePrinciple,
            Error::Usage(_) => GravsimStatus::Usage,
            Error::Config(_) => GravsimStatus::Config,
            Error::Boundary { .. } => GravsimStatus::Boundary,
            Error::Analysis(_) => GravsimStatus::Analysis,
            Error::Schema { .. } => GravsimStatus::Schema,
            Error::Io(_) => GravsimStatus::Io,
        }
    }
}

/// Opaque species handle.
pub struct GravsimSpecies(AtomSpecies);

/// Opaque gravimeter setup handle.
pub struct GravsimSetup(GravimetrySetup);

/// Oracle parameters in scaled units (hbar = 1).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravsimOracleParams {
    pub m_i: f64,
    pub m_g: f64,
    pub g: f64,
    pub kappa: f64,
    pub t: f64,
    pub dt: f64,
    pub n_grid: usize,
    pub sigma0: f64,
    pub x0: f64,
    pub v0: f64,
}

impl From<GravsimOracleParams> for OracleParams {
    fn from(p: GravsimOracleParams) -> Self {
        OracleParams {
            m_i: p.m_i,
            m_g: p.m_g,
            g: p.g,
            kappa: p.kappa,
            t: p.t,
            dt: p.dt,
            n_grid: p.n_grid,
            sigma0: p.sigma0,
            x0: p.x0,
            v0: p.v0,
        }
    }
}

impl From<OracleParams> for GravsimOracleParams {
    fn from(p: OracleParams) -> Self {
        GravsimOracleParams {
            m_i: p.m_i,
            m_g: p.m_g,
            g: p.g,
            kappa: p.kappa,
            t: p.t,
            dt: p.dt,
            n_grid: p.n_grid,
            sigma0: p.sigma0,
            x0: p.x0,
            v0: p.v0,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GravsimOracleResult {
    /// Extracted phase in (-pi, pi].
    pub phase: f64,
    /// `-(m_g/m_i) kappa g T^2`, unwrapped.
    pub analytic_phase: f64,
    pub deviation: f64,
    pub p_a: f64,
    pub p_b: f64,
    pub overlap_magnitude: f64,
    pub norm_error: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GravsimFormat {
    Csv = 0,
    Json = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), GravsimStatus>) -> GravsimStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GravsimStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("panic inside gravsim".into());
            GravsimStatus::Panic
        }
    }
}

fn fail(e: Error) -> GravsimStatus {
    let status = GravsimStatus::from(&e);
    set_last_error(e.to_string());
    status
}

fn lift<T>(r: gravsim_core::Result<T>) -> Result<T, GravsimStatus> {
    r.map_err(fail)
}

fn null_error(name: &str) -> GravsimStatus {
    set_last_error(format!("{name} is null"));
    GravsimStatus::NullPointer
}

unsafe fn write<T>(out: *mut T, name: &str, value: T) -> Result<(), GravsimStatus> {
    if out.is_null() {
        return Err(null_error(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, GravsimStatus> {
    if s.is_null() {
        return Err(null_error(name));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_last_error(format!("{name} is not valid UTF-8"));
        GravsimStatus::InvalidUtf8
    })
}

unsafe fn borrow<'a, T>(p: *const T, name: &str) -> Result<&'a T, GravsimStatus> {
    p.as_ref().ok_or_else(|| null_error(name))
}

fn si() -> PhysicalConstants {
    PhysicalConstants::codata2018()
}

/// Library version, a static string the caller must not free.
#[no_mangle]
pub extern "C" fn gravsim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Free with
/// [`gravsim_string_free`].
#[no_mangle]
pub extern "C" fn gravsim_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_deref() {
        Some(msg) => CString::new(msg.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn gravsim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Shipped species by label (`"Cs-133"`, `"Rb-87"`).
///
/// # Safety
/// `label` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_species_preset(label: *const c_char, out: *mut *mut GravsimSpecies) -> GravsimStatus {
    guard(|| {
        let label = read_str(label, "label")?;
        let species = lift(AtomSpecies::preset(label))?;
        write(out, "out", Box::into_raw(Box::new(GravsimSpecies(species))))
    })
}

/// # Safety
/// `label` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_species_new(
    label: *const c_char,
    m_inertial_kg: f64,
    m_gravitational_kg: f64,
    nu0_hz: f64,
    out: *mut *mut GravsimSpecies,
) -> GravsimStatus {
    guard(|| {
        let label = read_str(label, "label")?;
        let species = lift(AtomSpecies::new(label, m_inertial_kg, m_gravitational_kg, nu0_hz))?;
        write(out, "out", Box::into_raw(Box::new(GravsimSpecies(species))))
    })
}

/// # Safety
/// `species` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gravsim_species_free(species: *mut GravsimSpecies) {
    if !species.is_null() {
        drop(Box::from_raw(species));
    }
}

/// m_g / m_i.
///
/// # Safety
/// `species` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_species_ep_ratio(species: *const GravsimSpecies, out: *mut f64) -> GravsimStatus {
    guard(|| {
        let s = borrow(species, "species")?;
        write(out, "out", s.0.ep_ratio())
    })
}

/// Resonant gravimeter launched from x = 0. The species is copied.
///
/// # Safety
/// `species` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_setup_new(
    species: *const GravsimSpecies,
    g: f64,
    kappa: f64,
    t: f64,
    initial_velocity: f64,
    out: *mut *mut GravsimSetup,
) -> GravsimStatus {
    guard(|| {
        let s = borrow(species, "species")?;
        let setup = lift(GravimetrySetup::new(s.0.clone(), g, kappa, t, initial_velocity))?;
        write(out, "out", Box::into_raw(Box::new(GravsimSetup(setup))))
    })
}

/// # Safety
/// `setup` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gravsim_setup_free(setup: *mut GravsimSetup) {
    if !setup.is_null() {
        drop(Box::from_raw(setup));
    }
}

/// `-(m_g/m_i) kappa g T^2` (rad).
///
/// # Safety
/// `setup` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_gravimeter_phase(setup: *const GravsimSetup, out: *mut f64) -> GravsimStatus {
    guard(|| {
        let s = borrow(setup, "setup")?;
        write(out, "out", lift(gravimeter_phase(&s.0))?)
    })
}

/// De Broglie form; fails with `EQUIVALENCE_PRINCIPLE` unless m_g = m_i.
///
/// # Safety
/// `setup` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_phase_debroglie_form(setup: *const GravsimSetup, out: *mut f64) -> GravsimStatus {
    guard(|| {
        let s = borrow(setup, "setup")?;
        write(out, "out", lift(phase_debroglie_form(&s.0))?)
    })
}

/// Compton form; fails with `EQUIVALENCE_PRINCIPLE` unless m_g = m_i.
///
/// # Safety
/// `setup` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_phase_compton_form(setup: *const GravsimSetup, out: *mut f64) -> GravsimStatus {
    guard(|| {
        let s = borrow(setup, "setup")?;
        write(out, "out", lift(phase_compton_form(&s.0, &si()))?)
    })
}

/// Arm separation at t = T (m).
///
/// # Safety
/// `setup` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_separation(setup: *const GravsimSetup, out: *mut f64) -> GravsimStatus {
    guard(|| {
        let s = borrow(setup, "setup")?;
        write(out, "out", lift(build_geometry(&s.0, &si()))?.separation_l)
    })
}

/// # Safety
/// `p_a` and `p_b` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_output_populations(
    phase: f64,
    visibility: f64,
    p_a: *mut f64,
    p_b: *mut f64,
) -> GravsimStatus {
    guard(|| {
        let pops = lift(output_populations(phase, visibility))?;
        write(p_a, "p_a", pops.p_a)?;
        write(p_b, "p_b", pops.p_b)
    })
}

/// `T g (x_a - x_b) / c^2` for two Cs clocks (s).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_relative_dilation(
    g: f64,
    x_a: f64,
    x_b: f64,
    duration: f64,
    out: *mut f64,
) -> GravsimStatus {
    guard(|| {
        let cs = lift(AtomSpecies::preset("Cs-133"))?;
        let a = lift(OscillatorClock::on_transition(cs.clone(), x_a))?;
        let b = lift(OscillatorClock::on_transition(cs, x_b))?;
        let cmp = lift(ClockComparison::new(a, b, duration))?;
        write(out, "out", lift(relative_dilation(&cmp, &UniformGravityField::new(g), &si()))?)
    })
}

/// Gravitational phase between two photon paths `l` apart in height over `t` (rad).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_photon_double_slit_phase(
    nu: f64,
    l: f64,
    t: f64,
    g: f64,
    out: *mut f64,
) -> GravsimStatus {
    guard(|| write(out, "out", lift(photon_double_slit_phase(nu, l, t, &UniformGravityField::new(g), &si()))?))
}

/// m_i = m_g = 1, kappa = 10, g = 0.5, T = 1, dt = 1/2000, n_grid = 4096.
#[no_mangle]
pub extern "C" fn gravsim_oracle_params_standard() -> GravsimOracleParams {
    OracleParams::standard().into()
}

/// Runs the wave-packet interferometer.
///
/// # Safety
/// `params` must be readable and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_oracle_run(
    params: *const GravsimOracleParams,
    out: *mut GravsimOracleResult,
) -> GravsimStatus {
    guard(|| {
        let p = *borrow(params, "params")?;
        let r = lift(run_interferometer_numeric(&p.into()))?;
        write(
            out,
            "out",
            GravsimOracleResult {
                phase: r.phase,
                analytic_phase: r.diagnostics.analytic_phase,
                deviation: r.diagnostics.deviation,
                p_a: r.p_a,
                p_b: r.p_b,
                overlap_magnitude: r.diagnostics.overlap_magnitude,
                norm_error: r.diagnostics.norm_error,
            },
        )
    })
}

/// Runs a scenario body (or wrapped scenario file) given as JSON and returns
/// the rendered report through `out`; free it with [`gravsim_string_free`].
/// `kind` uses the CLI names, e.g. `"gravimeter"`.
///
/// # Safety
/// `kind` and `scenario_json` must be NUL-terminated strings; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gravsim_run_scenario(
    kind: *const c_char,
    scenario_json: *const c_char,
    format: GravsimFormat,
    out: *mut *mut c_char,
) -> GravsimStatus {
    guard(|| {
        let kind: ScenarioKind = lift(read_str(kind, "kind")?.parse())?;
        let file = lift(ScenarioFile::parse(read_str(scenario_json, "scenario_json")?))?;
        if file.kind.is_some_and(|k| k != kind) {
            return Err(fail(Error::Usage("scenario kind does not match `kind`".into())));
        }
        let output = lift(run_body(kind, file.body, &si()))?;
        let text = match format {
            GravsimFormat::Csv => output.report.to_csv(),
            GravsimFormat::Json => output.report.to_json(),
        };
        let c = CString::new(text).map_err(|_| {
            set_last_error("report contains NUL".into());
            GravsimStatus::Io
        })?;
        write(out, "out", c.into_raw())
    })
}
