//! C ABI for the walk-generation and loop-erasure core.
//!
//! Walks and erasure traces are opaque handles created and freed here;
//! accessors copy scalars or coordinate vectors into caller-provided
//! buffers and report [`LerwStatus`] codes. All functions are safe to call
//! from any thread as long as each handle is used from one thread at a time.
//!
//! The C header is generated into `include/lerw.h` at build time.

use std::os::raw::c_char;

use lerw::erasure::{self, ErasureTrace};
use lerw::rng::derive_stream;
use lerw::walk::{generate_walk, WalkPath};

/// Status codes returned by fallible calls.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LerwStatus {
    LerwOk = 0,
    LerwNullPointer = 1,
    LerwInvalidArgument = 2,
    LerwOutOfRange = 3,
}

use LerwStatus::*;

/// A simple-random-walk path on `Z^d` (opaque).
pub struct LerwWalk(WalkPath);

/// The result of one loop-erasing pass (opaque).
pub struct LerwTrace {
    trace: ErasureTrace,
    dim: usize,
}

/// Crate version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lerw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Generate an `n_steps`-step walk on `Z^dim` from the deterministic stream
/// `(master_seed, stream_index)`. Returns NULL when `dim` is 0.
/// Free with `lerw_walk_free`.
#[no_mangle]
pub extern "C" fn lerw_walk_generate(
    master_seed: u64,
    stream_index: u64,
    n_steps: u64,
    dim: u32,
) -> *mut LerwWalk {
    if dim == 0 {
        return std::ptr::null_mut();
    }
    let mut rng = derive_stream(master_seed, stream_index);
    let path = generate_walk(&mut rng, n_steps as usize, dim as usize);
    Box::into_raw(Box::new(LerwWalk(path)))
}

/// # Safety
/// `walk` must be NULL or a pointer returned by `lerw_walk_generate` that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn lerw_walk_free(walk: *mut LerwWalk) {
    if !walk.is_null() {
        drop(Box::from_raw(walk));
    }
}

/// Number of points (steps + 1); 0 for NULL.
///
/// # Safety
/// `walk` must be NULL or a live walk handle.
#[no_mangle]
pub unsafe extern "C" fn lerw_walk_num_points(walk: *const LerwWalk) -> u64 {
    walk.as_ref().map_or(0, |w| w.0.len() as u64)
}

/// Lattice dimension; 0 for NULL.
///
/// # Safety
/// `walk` must be NULL or a live walk handle.
#[no_mangle]
pub unsafe extern "C" fn lerw_walk_dim(walk: *const LerwWalk) -> u32 {
    walk.as_ref().map_or(0, |w| w.0.dim() as u32)
}

/// Copy the coordinates of point `index` into `out` (length `dim`).
///
/// # Safety
/// `walk` must be NULL or a live walk handle; `out` must be NULL or point to
/// at least `dim` writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn lerw_walk_point(
    walk: *const LerwWalk,
    index: u64,
    out: *mut i64,
) -> LerwStatus {
    let Some(w) = walk.as_ref() else {
        return LerwNullPointer;
    };
    if out.is_null() {
        return LerwNullPointer;
    }
    if index as usize >= w.0.len() {
        return LerwOutOfRange;
    }
    let coords = w.0.point(index as usize).coords();
    std::ptr::copy_nonoverlapping(coords.as_ptr(), out, coords.len());
    LerwOk
}

/// `floor(N^alpha)` clamped to `[1, path_len]`; `alpha = INFINITY` maps to
/// `path_len`.
///
/// # Safety
/// `out` must be NULL or point to a writable `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn lerw_window_length(
    n_scale: u64,
    alpha: f64,
    path_len: u64,
    out: *mut u64,
) -> LerwStatus {
    if out.is_null() {
        return LerwNullPointer;
    }
    match erasure::window_length(n_scale, alpha, path_len as usize) {
        Ok(w) => {
            *out = w as u64;
            LerwOk
        }
        Err(_) => LerwInvalidArgument,
    }
}

/// Erase all loops of index span at most `window`. Returns NULL for NULL
/// input or `window == 0`. Free with `lerw_trace_free`.
///
/// # Safety
/// `walk` must be NULL or a live walk handle.
#[no_mangle]
pub unsafe extern "C" fn lerw_erase_windowed(
    walk: *const LerwWalk,
    window: u64,
) -> *mut LerwTrace {
    let Some(w) = walk.as_ref() else {
        return std::ptr::null_mut();
    };
    if window == 0 {
        return std::ptr::null_mut();
    }
    let trace = erasure::erase_windowed(w.0.points(), window as usize);
    Box::into_raw(Box::new(LerwTrace {
        trace,
        dim: w.0.dim(),
    }))
}

/// Classical full loop erasure (the whole path as the window).
///
/// # Safety
/// `walk` must be NULL or a live walk handle.
#[no_mangle]
pub unsafe extern "C" fn lerw_erase_full(walk: *const LerwWalk) -> *mut LerwTrace {
    let Some(w) = walk.as_ref() else {
        return std::ptr::null_mut();
    };
    let trace = erasure::erase_full(w.0.points());
    Box::into_raw(Box::new(LerwTrace {
        trace,
        dim: w.0.dim(),
    }))
}

/// # Safety
/// `trace` must be NULL or a pointer returned by one of the erase functions
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn lerw_trace_free(trace: *mut LerwTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// Number of jump times (erased-path points); 0 for NULL.
///
/// # Safety
/// `trace` must be NULL or a live trace handle.
#[no_mangle]
pub unsafe extern "C" fn lerw_trace_num_jumps(trace: *const LerwTrace) -> u64 {
    trace.as_ref().map_or(0, |t| t.trace.num_jumps() as u64)
}

/// The `i`-th jump time `sigma(i)`.
///
/// # Safety
/// `trace` must be NULL or a live trace handle; `out` must be NULL or point
/// to a writable `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn lerw_trace_sigma(
    trace: *const LerwTrace,
    i: u64,
    out: *mut u64,
) -> LerwStatus {
    let Some(t) = trace.as_ref() else {
        return LerwNullPointer;
    };
    if out.is_null() {
        return LerwNullPointer;
    }
    match t.trace.sigma.get(i as usize) {
        Some(&s) => {
            *out = s as u64;
            LerwOk
        }
        None => LerwOutOfRange,
    }
}

/// Whether path index `n` survives erasure (is a jump time).
///
/// # Safety
/// `trace` must be NULL or a live trace handle; `out` must be NULL or point
/// to a writable `bool`.
#[no_mangle]
pub unsafe extern "C" fn lerw_trace_y_flag(
    trace: *const LerwTrace,
    n: u64,
    out: *mut bool,
) -> LerwStatus {
    let Some(t) = trace.as_ref() else {
        return LerwNullPointer;
    };
    if out.is_null() {
        return LerwNullPointer;
    }
    match t.trace.y_flags.get(n as usize) {
        Some(&y) => {
            *out = y;
            LerwOk
        }
        None => LerwOutOfRange,
    }
}

/// Number of surviving indices among `0..=n`.
///
/// # Safety
/// `trace` must be NULL or a live trace handle; `out` must be NULL or point
/// to a writable `uint64_t`.
#[no_mangle]
pub unsafe extern "C" fn lerw_trace_rho(
    trace: *const LerwTrace,
    n: u64,
    out: *mut u64,
) -> LerwStatus {
    let Some(t) = trace.as_ref() else {
        return LerwNullPointer;
    };
    if out.is_null() {
        return LerwNullPointer;
    }
    match t.trace.rho.get(n as usize) {
        Some(&r) => {
            *out = r as u64;
            LerwOk
        }
        None => LerwOutOfRange,
    }
}

/// Copy the coordinates of erased-path point `i` into `out` (length `dim`).
///
/// # Safety
/// `trace` must be NULL or a live trace handle; `out` must be NULL or point
/// to at least `dim` writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn lerw_trace_point(
    trace: *const LerwTrace,
    i: u64,
    out: *mut i64,
) -> LerwStatus {
    let Some(t) = trace.as_ref() else {
        return LerwNullPointer;
    };
    if out.is_null() {
        return LerwNullPointer;
    }
    match t.trace.erased_path.get(i as usize) {
        Some(p) => {
            std::ptr::copy_nonoverlapping(p.coords().as_ptr(), out, t.dim);
            LerwOk
        }
        None => LerwOutOfRange,
    }
}

/// Fill `out_mask` (length `lerw_walk_num_points`) with the loop-free
/// indicator: true where the index lies in no loop of span `<= window`.
///
/// # Safety
/// `walk` must be NULL or a live walk handle; `out_mask` must be NULL or
/// point to `lerw_walk_num_points(walk)` writable `bool`.
#[no_mangle]
pub unsafe extern "C" fn lerw_loop_free_mask(
    walk: *const LerwWalk,
    window: u64,
    out_mask: *mut bool,
) -> LerwStatus {
    let Some(w) = walk.as_ref() else {
        return LerwNullPointer;
    };
    if out_mask.is_null() {
        return LerwNullPointer;
    }
    if window == 0 {
        return LerwInvalidArgument;
    }
    let mask = erasure::loop_free_mask(w.0.points(), window as usize);
    std::ptr::copy_nonoverlapping(mask.as_ptr(), out_mask, mask.len());
    LerwOk
}

/// Indicator that `[j, k]` contains no loop-free index.
///
/// # Safety
/// `mask` must be NULL or point to `len` readable `bool`; `out` must be NULL
/// or point to a writable `bool`.
#[no_mangle]
pub unsafe extern "C" fn lerw_z_indicator(
    mask: *const bool,
    len: u64,
    j: u64,
    k: u64,
    out: *mut bool,
) -> LerwStatus {
    if mask.is_null() || out.is_null() {
        return LerwNullPointer;
    }
    let mask = std::slice::from_raw_parts(mask, len as usize);
    match erasure::z_indicator(mask, j as usize, k as usize) {
        Ok(z) => {
            *out = z;
            LerwOk
        }
        Err(_) => LerwOutOfRange,
    }
}

/// Least-squares power-law fit `y ~ amplitude * x^(-exponent)` over all
/// `len` points; every coordinate must be strictly positive and `len >= 3`.
/// Any output pointer may be NULL to skip that value.
///
/// # Safety
/// `xs` and `ys` must point to `len` readable `double`; non-NULL output
/// pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn lerw_fit_power_law(
    xs: *const f64,
    ys: *const f64,
    len: u64,
    out_exponent: *mut f64,
    out_amplitude: *mut f64,
    out_stderr: *mut f64,
    out_r_squared: *mut f64,
) -> LerwStatus {
    if xs.is_null() || ys.is_null() {
        return LerwNullPointer;
    }
    let xs = std::slice::from_raw_parts(xs, len as usize);
    let ys = std::slice::from_raw_parts(ys, len as usize);
    let points: Vec<(f64, f64)> = xs.iter().copied().zip(ys.iter().copied()).collect();
    let range = (f64::NEG_INFINITY, f64::INFINITY);
    match lerw::estimators::fit_power_law(&points, range) {
        Ok(fit) => {
            if !out_exponent.is_null() {
                *out_exponent = fit.exponent;
            }
            if !out_amplitude.is_null() {
                *out_amplitude = fit.amplitude;
            }
            if !out_stderr.is_null() {
                *out_stderr = fit.stderr;
            }
            if !out_r_squared.is_null() {
                *out_r_squared = fit.r_squared;
            }
            LerwOk
        }
        Err(_) => LerwInvalidArgument,
    }
}
