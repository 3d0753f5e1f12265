// Copyright 2026 The deltakick Authors
// SPDX-License-Identifier: Apache-2.0

//! C interface to `deltakick`.
//!
//! Every fallible call returns a [`DkStatus`]; on failure the message is
//! available from [`dk_last_error`] until the next call on the same thread.
//! Handles are opaque and must be released with the matching `_free`.
//! Matrices are row-major.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use deltakick::analysis::{chi_eigenvalues, is_cp, is_positive, PositivityOptions};
use deltakick::channels::{
    build_n_kick_channel_with, compose, transition_map, write_map, BuildOptions, MapKind, QubitChannel, QubitMap,
    TransitionMap,
};
use deltakick::environment::{GaussianEnvironment, SingleModeThermal, TabulatedKernel, WhiteKickKernel};
use deltakick::kicks::{InteractionGeometry, KickSchedule};
use deltakick::pauli::{BlochVector, C64};
use deltakick::Error;
use nalgebra::Vector3;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidEnvironment = 3,
    InvalidSchedule = 4,
    TooManyKicks = 5,
    Singular = 6,
    Domain = 7,
    Io = 8,
    Panic = 9,
}

/// Gaussian environment seen by the kicks.
pub struct DkEnvironment(Box<dyn GaussianEnvironment + Send + Sync>);

/// Free qubit Hamiltonian axis, coupling axis and precession frequency.
pub struct DkGeometry(InteractionGeometry);

/// A channel or a transition map.
pub struct DkChannel {
    map: QubitMap,
    kind: MapKind,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DkStatus {
    match e {
        Error::InvalidEnvironment(_) | Error::TimeNotInTable(_) | Error::NonEvenEnvironment => {
            DkStatus::InvalidEnvironment
        }
        Error::InvalidSchedule(_) | Error::LengthMismatch { .. } => DkStatus::InvalidSchedule,
        Error::TooManyKicks { .. } => DkStatus::TooManyKicks,
        Error::SingularChannel(_) => DkStatus::Singular,
        Error::NonUnitVector(_) | Error::Parse { .. } | Error::Config(_) => DkStatus::InvalidArgument,
        Error::Io(_) => DkStatus::Io,
        _ => DkStatus::Domain,
    }
}

/// Runs `f`, recording any error or panic message.
fn guard(f: impl FnOnce() -> Result<(), (DkStatus, String)>) -> DkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DkStatus::Panic
        }
    }
}

fn lib<T>(r: deltakick::Result<T>) -> Result<T, (DkStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (DkStatus, String) {
    (DkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (DkStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (DkStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read3(p: *const f64, what: &str) -> Result<Vector3<f64>, (DkStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    let s = std::slice::from_raw_parts(p, 3);
    Ok(Vector3::new(s[0], s[1], s[2]))
}

fn into_handle(map: QubitMap, kind: MapKind) -> *mut DkChannel {
    Box::into_raw(Box::new(DkChannel { map, kind }))
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn dk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Thermal single mode, optionally displaced by `disp_re + i disp_im`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn dk_environment_thermal(
    omega: f64,
    nbar: f64,
    disp_re: f64,
    disp_im: f64,
    out: *mut *mut DkEnvironment,
) -> DkStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let env = lib(SingleModeThermal::new(omega, nbar))?.with_displacement(C64::new(disp_re, disp_im));
        *out = Box::into_raw(Box::new(DkEnvironment(Box::new(env))));
        Ok(())
    })
}

/// Uncorrelated kicks with per-kick variance `variance`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn dk_environment_white(variance: f64, out: *mut *mut DkEnvironment) -> DkStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let env = lib(WhiteKickKernel::new(variance))?;
        *out = Box::into_raw(Box::new(DkEnvironment(Box::new(env))));
        Ok(())
    })
}

/// Tabulated kernel read from a text file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_environment_load_tabulated(path: *const c_char, out: *mut *mut DkEnvironment) -> DkStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| (DkStatus::InvalidArgument, "path is not UTF-8".to_string()))?;
        let env = lib(TabulatedKernel::load(std::path::Path::new(path)))?;
        *out = Box::into_raw(Box::new(DkEnvironment(Box::new(env))));
        Ok(())
    })
}

/// # Safety
/// `env` must be NULL or a handle from a `dk_environment_*` constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_environment_free(env: *mut DkEnvironment) {
    if !env.is_null() {
        drop(Box::from_raw(env));
    }
}

/// `h` and `alpha` are unit 3-vectors; `omega` is the qubit precession frequency.
///
/// # Safety
/// `h` and `alpha` must point to 3 doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_geometry_new(
    h: *const f64,
    alpha: *const f64,
    omega: f64,
    out: *mut *mut DkGeometry,
) -> DkStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let g = lib(InteractionGeometry::new(read3(h, "h")?, read3(alpha, "alpha")?, omega))?;
        *out = Box::into_raw(Box::new(DkGeometry(g)));
        Ok(())
    })
}

/// # Safety
/// `geom` must be NULL or a handle from [`dk_geometry_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_geometry_free(geom: *mut DkGeometry) {
    if !geom.is_null() {
        drop(Box::from_raw(geom));
    }
}

/// Exact channel after `n` kicks at `times`. `weights` may be NULL for unit weights.
/// `max_kicks` of 0 selects the library default.
///
/// # Safety
/// `times` (and `weights` if non-NULL) must point to `n` doubles; handles must be live.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_build(
    env: *const DkEnvironment,
    geom: *const DkGeometry,
    times: *const f64,
    weights: *const f64,
    n: usize,
    max_kicks: usize,
    out: *mut *mut DkChannel,
) -> DkStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let env = deref(env, "env")?;
        let geom = deref(geom, "geom")?;
        if times.is_null() {
            return Err(null("times"));
        }
        let t = std::slice::from_raw_parts(times, n).to_vec();
        let sched = if weights.is_null() {
            lib(KickSchedule::new(t))?
        } else {
            lib(KickSchedule::with_weights(
                t,
                std::slice::from_raw_parts(weights, n).to_vec(),
            ))?
        };
        let mut opts = BuildOptions::default();
        if max_kicks > 0 {
            opts.max_kicks = max_kicks;
        }
        let ch = lib(build_n_kick_channel_with(env.0.as_ref(), &geom.0, &sched, opts))?;
        *out = into_handle(ch.0, MapKind::Channel);
        Ok(())
    })
}

/// Transition map `Θ` with `longer = Θ ∘ shorter`.
///
/// # Safety
/// Both inputs must be live channel handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_transition(
    longer: *const DkChannel,
    shorter: *const DkChannel,
    out: *mut *mut DkChannel,
) -> DkStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let l = QubitChannel(deref(longer, "longer")?.map.clone());
        let s = QubitChannel(deref(shorter, "shorter")?.map.clone());
        let theta = lib(transition_map(&l, &s))?;
        *out = into_handle(theta.0, MapKind::Transition);
        Ok(())
    })
}

/// `later ∘ earlier`. The result is a channel only if both inputs are.
///
/// # Safety
/// Both inputs must be live channel handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_compose(
    later: *const DkChannel,
    earlier: *const DkChannel,
    out: *mut *mut DkChannel,
) -> DkStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let l = deref(later, "later")?;
        let e = deref(earlier, "earlier")?;
        let kind = if l.kind == MapKind::Channel && e.kind == MapKind::Channel {
            MapKind::Channel
        } else {
            MapKind::Transition
        };
        let m = compose(&TransitionMap(l.map.clone()), &TransitionMap(e.map.clone()));
        *out = into_handle(m.0, kind);
        Ok(())
    })
}

/// # Safety
/// `ch` must be NULL or a live channel handle.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_free(ch: *mut DkChannel) {
    if !ch.is_null() {
        drop(Box::from_raw(ch));
    }
}

/// Writes the Bloch matrix `A` (9 doubles, row-major) and offset `b` (3 doubles).
///
/// # Safety
/// `a` must point to 9 writable doubles and `b` to 3.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_affine(ch: *const DkChannel, a: *mut f64, b: *mut f64) -> DkStatus {
    guard(|| {
        let ch = deref(ch, "ch")?;
        if a.is_null() || b.is_null() {
            return Err(null("output buffer"));
        }
        let a = std::slice::from_raw_parts_mut(a, 9);
        let b = std::slice::from_raw_parts_mut(b, 3);
        for i in 0..3 {
            for j in 0..3 {
                a[3 * i + j] = ch.map.affine.a[(i, j)];
            }
            b[i] = ch.map.affine.b[i];
        }
        Ok(())
    })
}

/// Writes the 4×4 process matrix in the handle's operator basis as separate real
/// and imaginary parts (16 doubles each, row-major).
///
/// # Safety
/// `re` and `im` must each point to 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_chi(ch: *const DkChannel, re: *mut f64, im: *mut f64) -> DkStatus {
    guard(|| {
        let ch = deref(ch, "ch")?;
        if re.is_null() || im.is_null() {
            return Err(null("output buffer"));
        }
        let re = std::slice::from_raw_parts_mut(re, 16);
        let im = std::slice::from_raw_parts_mut(im, 16);
        for i in 0..4 {
            for j in 0..4 {
                re[4 * i + j] = ch.map.chi[(i, j)].re;
                im[4 * i + j] = ch.map.chi[(i, j)].im;
            }
        }
        Ok(())
    })
}

/// Eigenvalues of the process matrix in descending order.
///
/// # Safety
/// `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_chi_eigenvalues(ch: *const DkChannel, out: *mut f64) -> DkStatus {
    guard(|| {
        let ch = deref(ch, "ch")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let ev = chi_eigenvalues(&ch.map);
        std::slice::from_raw_parts_mut(out, 4).copy_from_slice(&ev);
        Ok(())
    })
}

/// Maps a Bloch vector.
///
/// # Safety
/// `u_in` must point to 3 readable doubles and `u_out` to 3 writable ones.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_apply(ch: *const DkChannel, u_in: *const f64, u_out: *mut f64) -> DkStatus {
    guard(|| {
        let ch = deref(ch, "ch")?;
        let u = read3(u_in, "u_in")?;
        if u_out.is_null() {
            return Err(null("u_out"));
        }
        let v = ch.map.affine.apply(&BlochVector(u));
        std::slice::from_raw_parts_mut(u_out, 3).copy_from_slice(v.0.as_slice());
        Ok(())
    })
}

/// Complete positivity: smallest process-matrix eigenvalue `>= -tol`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_is_cp(ch: *const DkChannel, tol: f64, out: *mut bool) -> DkStatus {
    guard(|| {
        let ch = deref(ch, "ch")?;
        *out_ptr(out, "out")? = is_cp(&ch.map, tol);
        Ok(())
    })
}

/// Positivity on the Bloch ball by sampling `n_samples` pure states.
/// `seed` of 0 leaves the deterministic sphere grid unrotated.
///
/// # Safety
/// `out` must be writable; `witness` may be NULL or point to 3 writable doubles,
/// which are set to a violating input when one is found.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_is_positive(
    ch: *const DkChannel,
    tol: f64,
    n_samples: usize,
    seed: u64,
    out: *mut bool,
    witness: *mut f64,
) -> DkStatus {
    guard(|| {
        let ch = deref(ch, "ch")?;
        let out = out_ptr(out, "out")?;
        let opts = PositivityOptions {
            tol,
            n_samples,
            seed: (seed != 0).then_some(seed),
        };
        let p = is_positive(&ch.map, &opts);
        *out = p.positive;
        if let (Some(w), false) = (p.witness, witness.is_null()) {
            std::slice::from_raw_parts_mut(witness, 3).copy_from_slice(w.0.as_slice());
        }
        Ok(())
    })
}

/// Text serialisation of the map; release with [`dk_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dk_channel_to_text(ch: *const DkChannel, out: *mut *mut c_char) -> DkStatus {
    guard(|| {
        let ch = deref(ch, "ch")?;
        let out = out_ptr(out, "out")?;
        let text = write_map(&ch.map, ch.kind);
        *out = CString::new(text)
            .map_err(|_| (DkStatus::Domain, "text contains NUL".to_string()))?
            .into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
