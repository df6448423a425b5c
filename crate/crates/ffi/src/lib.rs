//! C ABI for `landau-oam`.
//!
//! Every function returns a [`LandauStatus`]; results go through out
//! pointers. On failure, [`landau_last_error`] returns a message describing
//! the most recent error on the calling thread.
//!
//! OAM selectors are plain integers (`LANDAU_KIND_*`, `LANDAU_AXIS_*`) so
//! that an out-of-range value from C is reported instead of being undefined
//! behaviour.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use landau_oam::classical::{self, InitialConditions};
use landau_oam::fock::{self, InteriorProjector, OperatorId, OperatorSet};
use landau_oam::quadrature::QuadratureRule;
use landau_oam::wavefunction;
use landau_oam::{Axis, Error, LandauQuantumNumbers, OamKind, OamSpec, PhysicalConfig};

/// Status codes returned by every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LandauStatus {
    Ok = 0,
    NullPointer = 1,
    /// A parameter is out of its domain (non-positive field, m > n, ...).
    InvalidArgument = 2,
    /// The requested state is outside the interior block of the Fock basis.
    OutsideInterior = 3,
    /// The request is not defined (canonical OAM of a classical orbit).
    Unsupported = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

pub const LANDAU_KIND_CANONICAL: u32 = 0;
pub const LANDAU_KIND_MECHANICAL: u32 = 1;
pub const LANDAU_KIND_PSEUDO: u32 = 2;
pub const LANDAU_AXIS_ORIGIN: u32 = 0;
pub const LANDAU_AXIS_GUIDING_CENTER: u32 = 1;

/// Physical parameters (B, e, m_e). Opaque.
pub struct LandauConfig {
    inner: PhysicalConfig,
    rule: QuadratureRule,
}

/// Truncated Fock-space operators plus their interior projector. Opaque.
pub struct LandauFock {
    ops: OperatorSet,
    proj: InteriorProjector,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> LandauStatus {
    match err {
        Error::OutsideInterior { .. } => LandauStatus::OutsideInterior,
        Error::CanonicalClassical => LandauStatus::Unsupported,
        _ => LandauStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Domain(Error),
    Selector(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Run `body` behind a panic guard and translate its outcome into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> LandauStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LandauStatus::Ok,
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("null pointer passed as `{name}`"));
            LandauStatus::NullPointer
        }
        Ok(Err(Failure::Domain(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Selector(msg))) => {
            set_error(msg);
            LandauStatus::InvalidArgument
        }
        Err(_) => {
            set_error("internal panic".into());
            LandauStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn write<T>(p: *mut T, name: &'static str, value: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    p.write(value);
    Ok(())
}

fn oam_spec(kind: u32, axis: u32) -> Result<OamSpec, Failure> {
    let kind = match kind {
        LANDAU_KIND_CANONICAL => OamKind::Canonical,
        LANDAU_KIND_MECHANICAL => OamKind::Mechanical,
        LANDAU_KIND_PSEUDO => OamKind::Pseudo,
        other => return Err(Failure::Selector(format!("unknown OAM kind {other}"))),
    };
    let axis = match axis {
        LANDAU_AXIS_ORIGIN => Axis::Origin,
        LANDAU_AXIS_GUIDING_CENTER => Axis::GuidingCenter,
        other => return Err(Failure::Selector(format!("unknown axis {other}"))),
    };
    Ok(OamSpec::new(kind, axis))
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn landau_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Create a configuration; free it with `landau_config_free`.
#[no_mangle]
pub unsafe extern "C" fn landau_config_new(b: f64, e: f64, mass: f64, out: *mut *mut LandauConfig) -> LandauStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let inner = PhysicalConfig::new(b, e, mass)?;
        let handle = Box::new(LandauConfig {
            inner,
            rule: QuadratureRule::default(),
        });
        write(out, "out", Box::into_raw(handle))
    })
}

#[no_mangle]
pub unsafe extern "C" fn landau_config_free(config: *mut LandauConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Cyclotron frequency eB/m_e.
#[no_mangle]
pub unsafe extern "C" fn landau_omega(config: *const LandauConfig, out: *mut f64) -> LandauStatus {
    guard(|| write(out, "out", deref(config, "config")?.inner.omega()))
}

/// Magnetic length 1/sqrt(eB).
#[no_mangle]
pub unsafe extern "C" fn landau_magnetic_length(config: *const LandauConfig, out: *mut f64) -> LandauStatus {
    guard(|| write(out, "out", deref(config, "config")?.inner.magnetic_length()))
}

/// Landau level energy ω(n + 1/2).
#[no_mangle]
pub unsafe extern "C" fn landau_energy(config: *const LandauConfig, n: i64, out: *mut f64) -> LandauStatus {
    guard(|| {
        let cfg = deref(config, "config")?;
        write(out, "out", landau_oam::landau_energy(&cfg.inner, n)?)
    })
}

/// Wavefunction ψ_{n,m}(r, φ) as real and imaginary parts.
#[no_mangle]
pub unsafe extern "C" fn landau_psi(
    config: *const LandauConfig,
    n: i64,
    m: i64,
    r: f64,
    phi: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LandauStatus {
    guard(|| {
        let cfg = deref(config, "config")?;
        if out_re.is_null() || out_im.is_null() {
            return Err(Failure::Null("out_re/out_im"));
        }
        let qn = LandauQuantumNumbers::new(n, m)?;
        let psi = wavefunction::psi_value(qn, &cfg.inner, r, phi)?;
        write(out_re, "out_re", psi.re)?;
        write(out_im, "out_im", psi.im)
    })
}

/// Norm of ψ_{n,m} by Gauss–Laguerre quadrature (64 radial nodes).
#[no_mangle]
pub unsafe extern "C" fn landau_quadrature_norm(
    config: *const LandauConfig,
    n: i64,
    m: i64,
    out: *mut f64,
) -> LandauStatus {
    guard(|| {
        let cfg = deref(config, "config")?;
        let qn = LandauQuantumNumbers::new(n, m)?;
        write(out, "out", wavefunction::norm_check(qn, &cfg.inner, &cfg.rule))
    })
}

/// OAM expectation value in the state (n, m) by quadrature.
#[no_mangle]
pub unsafe extern "C" fn landau_quadrature_oam(
    config: *const LandauConfig,
    n: i64,
    m: i64,
    kind: u32,
    axis: u32,
    out: *mut f64,
) -> LandauStatus {
    guard(|| {
        let cfg = deref(config, "config")?;
        let qn = LandauQuantumNumbers::new(n, m)?;
        let spec = oam_spec(kind, axis)?;
        write(
            out,
            "out",
            wavefunction::expectation_oam(qn, &cfg.inner, spec, &cfg.rule),
        )
    })
}

/// Build the truncated Fock operators with per-mode `cutoff` and interior
/// `margin`; free with `landau_fock_free`.
#[no_mangle]
pub unsafe extern "C" fn landau_fock_new(
    config: *const LandauConfig,
    cutoff: usize,
    margin: usize,
    out: *mut *mut LandauFock,
) -> LandauStatus {
    guard(|| {
        let cfg = deref(config, "config")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let proj = fock::interior_projector(cutoff, margin)?;
        let ops = fock::build_operator_set(&cfg.inner, cutoff)?;
        write(out, "out", Box::into_raw(Box::new(LandauFock { ops, proj })))
    })
}

#[no_mangle]
pub unsafe extern "C" fn landau_fock_free(handle: *mut LandauFock) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of basis states in the interior block.
#[no_mangle]
pub unsafe extern "C" fn landau_fock_interior_rank(handle: *const LandauFock, out: *mut usize) -> LandauStatus {
    guard(|| write(out, "out", deref(handle, "handle")?.proj.rank()))
}

/// OAM expectation value in the basis ket of (n, m). Fails with
/// `LANDAU_STATUS_OUTSIDE_INTERIOR` for kets near the cutoff.
#[no_mangle]
pub unsafe extern "C" fn landau_fock_oam(
    handle: *const LandauFock,
    n: i64,
    m: i64,
    kind: u32,
    axis: u32,
    out: *mut f64,
) -> LandauStatus {
    guard(|| {
        let h = deref(handle, "handle")?;
        let qn = LandauQuantumNumbers::new(n, m)?;
        let spec = oam_spec(kind, axis)?;
        write(out, "out", fock::expectation_fock(qn, &h.ops, &h.proj, spec)?)
    })
}

/// Cyclotron radius squared and guiding-center distance squared in (n, m).
#[no_mangle]
pub unsafe extern "C" fn landau_fock_radii(
    handle: *const LandauFock,
    n: i64,
    m: i64,
    out_rc2: *mut f64,
    out_gc2: *mut f64,
) -> LandauStatus {
    guard(|| {
        let h = deref(handle, "handle")?;
        if out_rc2.is_null() || out_gc2.is_null() {
            return Err(Failure::Null("out_rc2/out_gc2"));
        }
        let qn = LandauQuantumNumbers::new(n, m)?;
        let rc2 = fock::expectation_fock(qn, &h.ops, &h.proj, OperatorId::CyclotronRadiusSq)?;
        let gc2 = fock::expectation_fock(qn, &h.ops, &h.proj, OperatorId::GuidingCenterRadiusSq)?;
        write(out_rc2, "out_rc2", rc2)?;
        write(out_gc2, "out_gc2", gc2)
    })
}

/// Largest interior residual over the operator identities and the
/// conservation laws; `out_pass` is 1 iff every residual is within
/// `tolerance` (conservation residuals scale with ω).
#[no_mangle]
pub unsafe extern "C" fn landau_fock_check_identities(
    handle: *const LandauFock,
    tolerance: f64,
    out_max_residual: *mut f64,
    out_pass: *mut i32,
) -> LandauStatus {
    guard(|| {
        let h = deref(handle, "handle")?;
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Failure::Selector(format!("tolerance must be > 0, got {tolerance}")));
        }
        let config = *h.ops.config();
        let ids = fock::identity_checks(&h.ops, &h.proj, &config, tolerance);
        let cons = fock::conservation_checks(&h.ops, &h.proj, tolerance);
        let worst = ids
            .residuals
            .iter()
            .chain(cons.residuals.iter())
            .map(|r| r.value)
            .fold(0.0f64, f64::max);
        write(out_max_residual, "out_max_residual", worst)?;
        write(out_pass, "out_pass", i32::from(ids.all_passed() && cons.all_passed()))
    })
}

/// Guiding center of the classical orbit through (x0, y0) with velocity
/// (vx0, vy0).
#[no_mangle]
pub unsafe extern "C" fn landau_classical_guiding_center(
    config: *const LandauConfig,
    x0: f64,
    y0: f64,
    vx0: f64,
    vy0: f64,
    out_x: *mut f64,
    out_y: *mut f64,
) -> LandauStatus {
    guard(|| {
        let cfg = deref(config, "config")?;
        if out_x.is_null() || out_y.is_null() {
            return Err(Failure::Null("out_x/out_y"));
        }
        let (gx, gy) = classical::guiding_center(&InitialConditions::new(x0, y0, vx0, vy0), &cfg.inner);
        write(out_x, "out_x", gx)?;
        write(out_y, "out_y", gy)
    })
}

/// Classical OAM at time `t` on the closed-form orbit. Only the mechanical
/// and pseudo kinds are defined.
#[no_mangle]
pub unsafe extern "C" fn landau_classical_oam(
    config: *const LandauConfig,
    x0: f64,
    y0: f64,
    vx0: f64,
    vy0: f64,
    t: f64,
    kind: u32,
    axis: u32,
    out: *mut f64,
) -> LandauStatus {
    guard(|| {
        let cfg = deref(config, "config")?;
        let spec = oam_spec(kind, axis)?;
        let ic = InitialConditions::new(x0, y0, vx0, vy0);
        let state = classical::closed_form_state(&ic, &cfg.inner, t);
        write(out, "out", classical::classical_oam(&state, &ic, &cfg.inner, spec)?)
    })
}

/// One-period time average of a classical OAM by Simpson's rule with
/// `samples` intervals (at least 16).
#[no_mangle]
pub unsafe extern "C" fn landau_classical_time_average(
    config: *const LandauConfig,
    x0: f64,
    y0: f64,
    vx0: f64,
    vy0: f64,
    kind: u32,
    axis: u32,
    samples: usize,
    out: *mut f64,
) -> LandauStatus {
    guard(|| {
        let cfg = deref(config, "config")?;
        let spec = oam_spec(kind, axis)?;
        let ic = InitialConditions::new(x0, y0, vx0, vy0);
        write(out, "out", classical::time_average_oam(&ic, &cfg.inner, spec, samples)?)
    })
}
