//! C interface to the hecke library.
//!
//! Every fallible function returns a [`HeckeStatus`]; on failure a message is
//! available from [`hecke_last_error`] on the same thread. Objects are opaque
//! and must be released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hecke::cycles::enumerate::{enumerate, Bound};
use hecke::cycles::CycleRecord;
use hecke::field::poly;
use hecke::group::Mat2;
use hecke::{q5, Context, CycInt, Error, ZLambda};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    /// A value does not fit the requested fixed-width type.
    Overflow = 3,
    Internal = 4,
}

/// Arithmetic context for one q.
pub struct HeckeContext {
    inner: Context,
}

/// Result of an enumeration.
pub struct HeckeCycleList {
    q: u32,
    degree: usize,
    records: Vec<CycleRecord>,
    coords: Vec<(f64, f64)>,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct HeckeCycle {
    pub age: i64,
    pub generation: usize,
    pub orbit: u32,
    pub re: f64,
    pub im: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: HeckeStatus, msg: &str) -> HeckeStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> HeckeStatus {
    let status = match e {
        Error::Internal(_) | Error::Io(_) => HeckeStatus::Internal,
        _ => HeckeStatus::InvalidArgument,
    };
    fail(status, &e.to_string())
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> HeckeStatus) -> HeckeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(HeckeStatus::Internal, "panic inside the library"),
    }
}

/// Message for the last failure on this thread; valid until the next call that fails.
#[no_mangle]
pub extern "C" fn hecke_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hecke_context_new(q: u32, out: *mut *mut HeckeContext) -> HeckeStatus {
    guard(|| {
        if out.is_null() {
            return fail(HeckeStatus::NullPointer, "out is null");
        }
        match Context::new(q) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(HeckeContext { inner }));
                HeckeStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `ctx` must come from `hecke_context_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hecke_context_free(ctx: *mut HeckeContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Degree of λ over Q: the length of every coefficient array for this context.
///
/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn hecke_context_degree(ctx: *const HeckeContext) -> usize {
    ctx.as_ref().map_or(0, |c| c.inner.degree())
}

/// The minimal polynomial of λ as text, e.g. "t^2-t-1". Free with `hecke_string_free`.
///
/// # Safety
/// `ctx` must be a live context and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hecke_minpoly(ctx: *const HeckeContext, out: *mut *mut c_char) -> HeckeStatus {
    guard(|| {
        let (Some(ctx), false) = (ctx.as_ref(), out.is_null()) else {
            return fail(HeckeStatus::NullPointer, "null argument");
        };
        write_string(out, poly::to_string(ctx.inner.pmin(), "t"))
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> HeckeStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            HeckeStatus::Ok
        }
        Err(_) => fail(HeckeStatus::Internal, "string contains NUL"),
    }
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn hecke_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn read_zl(ctx: &Context, p: *const i64) -> ZLambda {
    let s = std::slice::from_raw_parts(p, ctx.degree());
    ctx.zl_from_i64s(s)
}

/// Whether a + cη is an odd vanishing cycle; `a` and `c` hold `degree` coefficients
/// in the basis 1, λ, λ², ….
///
/// # Safety
/// `ctx` must be live, `a` and `c` must point to `degree` values, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hecke_is_member(
    ctx: *const HeckeContext,
    a: *const i64,
    c: *const i64,
    out: *mut bool,
) -> HeckeStatus {
    guard(|| {
        let Some(ctx) = ctx.as_ref() else {
            return fail(HeckeStatus::NullPointer, "ctx is null");
        };
        if a.is_null() || c.is_null() || out.is_null() {
            return fail(HeckeStatus::NullPointer, "null argument");
        }
        let ctx = &ctx.inner;
        let x = CycInt::new(read_zl(ctx, a), read_zl(ctx, c));
        match ctx.is_odd_vanishing_cycle(&x) {
            Ok(m) => {
                *out = m;
                HeckeStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Whether the matrix (m₁₁ m₁₂; m₂₁ m₂₂) lies in the Hecke group; `entries`
/// holds the four entries row by row, each as `degree` coefficients.
///
/// # Safety
/// `ctx` must be live, `entries` must point to 4·degree values, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hecke_in_hecke_group(
    ctx: *const HeckeContext,
    entries: *const i64,
    out: *mut bool,
) -> HeckeStatus {
    guard(|| {
        let Some(ctx) = ctx.as_ref() else {
            return fail(HeckeStatus::NullPointer, "ctx is null");
        };
        if entries.is_null() || out.is_null() {
            return fail(HeckeStatus::NullPointer, "null argument");
        }
        let ctx = &ctx.inner;
        let d = ctx.degree();
        let e = |i: usize| read_zl(ctx, entries.add(i * d));
        let m = Mat2::new(e(0), e(1), e(2), e(3));
        match ctx.in_hecke_group(&m) {
            Ok(v) => {
                *out = v;
                HeckeStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

unsafe fn enumerate_into(ctx: *const HeckeContext, bound: Bound, out: *mut *mut HeckeCycleList) -> HeckeStatus {
    let Some(ctx) = ctx.as_ref() else {
        return fail(HeckeStatus::NullPointer, "ctx is null");
    };
    if out.is_null() {
        return fail(HeckeStatus::NullPointer, "out is null");
    }
    let ctx = &ctx.inner;
    match enumerate(ctx, &bound, 1) {
        Ok(records) => {
            let coords = records.iter().map(|r| ctx.cyc_to_f64(&r.point)).collect();
            *out = Box::into_raw(Box::new(HeckeCycleList {
                q: ctx.q(),
                degree: ctx.degree(),
                records,
                coords,
            }));
            HeckeStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// All odd vanishing cycles with |x|² ≤ num/den, in canonical order.
///
/// # Safety
/// `ctx` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hecke_enumerate_disk(
    ctx: *const HeckeContext,
    num: i64,
    den: i64,
    out: *mut *mut HeckeCycleList,
) -> HeckeStatus {
    guard(|| {
        if den <= 0 || num < 0 {
            return fail(HeckeStatus::InvalidArgument, "need num ≥ 0 and den > 0");
        }
        enumerate_into(ctx, Bound::disk(num, den), out)
    })
}

/// All odd vanishing cycles of age at most `age`, in canonical order.
///
/// # Safety
/// `ctx` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hecke_enumerate_age(
    ctx: *const HeckeContext,
    age: u32,
    out: *mut *mut HeckeCycleList,
) -> HeckeStatus {
    guard(|| enumerate_into(ctx, Bound::Age(age), out))
}

/// # Safety
/// `list` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn hecke_cycle_list_len(list: *const HeckeCycleList) -> usize {
    list.as_ref().map_or(0, |l| l.records.len())
}

/// # Safety
/// `list` must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hecke_cycle_list_get(
    list: *const HeckeCycleList,
    index: usize,
    out: *mut HeckeCycle,
) -> HeckeStatus {
    guard(|| {
        let (Some(list), false) = (list.as_ref(), out.is_null()) else {
            return fail(HeckeStatus::NullPointer, "null argument");
        };
        let Some(r) = list.records.get(index) else {
            return fail(HeckeStatus::InvalidArgument, "index out of range");
        };
        let (re, im) = list.coords[index];
        *out = HeckeCycle {
            age: r.age,
            generation: r.generation,
            orbit: r.orbit,
            re,
            im,
        };
        HeckeStatus::Ok
    })
}

/// Writes the `degree` coefficients of a and c for the point a + cη at `index`.
///
/// # Safety
/// `list` must be live; `a_out` and `c_out` must have room for `degree` values.
#[no_mangle]
pub unsafe extern "C" fn hecke_cycle_list_coeffs(
    list: *const HeckeCycleList,
    index: usize,
    a_out: *mut i64,
    c_out: *mut i64,
) -> HeckeStatus {
    guard(|| {
        let Some(list) = list.as_ref() else {
            return fail(HeckeStatus::NullPointer, "list is null");
        };
        if a_out.is_null() || c_out.is_null() {
            return fail(HeckeStatus::NullPointer, "null argument");
        }
        let Some(r) = list.records.get(index) else {
            return fail(HeckeStatus::InvalidArgument, "index out of range");
        };
        let a = std::slice::from_raw_parts_mut(a_out, list.degree);
        let c = std::slice::from_raw_parts_mut(c_out, list.degree);
        for (dst, src) in [(a, &r.point.a), (c, &r.point.c)] {
            for (d, s) in dst.iter_mut().zip(src.coeffs()) {
                match s.to_i64() {
                    Some(v) => *d = v,
                    None => return fail(HeckeStatus::Overflow, "coefficient exceeds 64 bits"),
                }
            }
        }
        HeckeStatus::Ok
    })
}

/// q of the context that produced the list.
///
/// # Safety
/// `list` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn hecke_cycle_list_q(list: *const HeckeCycleList) -> u32 {
    list.as_ref().map_or(0, |l| l.q)
}

/// # Safety
/// `list` must come from an enumeration call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hecke_cycle_list_free(list: *mut HeckeCycleList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// For q = 5: γ = a + cη (two coefficients each) as u·δ, written as JSON with
/// fields "u", "delta" and "trace". Free the string with `hecke_string_free`.
///
/// # Safety
/// `a` and `c` must point to two values each, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hecke_decompose_q5_json(
    a: *const i64,
    c: *const i64,
    out: *mut *mut c_char,
) -> HeckeStatus {
    guard(|| {
        if a.is_null() || c.is_null() || out.is_null() {
            return fail(HeckeStatus::NullPointer, "null argument");
        }
        let ctx = Context::new(5).expect("q = 5 is valid");
        let g = CycInt::new(read_zl(&ctx, a), read_zl(&ctx, c));
        let d = match q5::decompose_q5(&ctx, &g) {
            Ok(d) => d,
            Err(e) => return from_error(e),
        };
        let trace: Vec<String> = d
            .trace
            .iter()
            .map(|s| format!(r#"{{"k":{},"n":{},"norm":"{}"}}"#, s.k, s.n, s.norm))
            .collect();
        let json = format!(
            r#"{{"u":"{}","delta":{{"a":"{}","c":"{}"}},"trace":[{}]}}"#,
            d.u.to_coeff_string(),
            d.delta.a.to_coeff_string(),
            d.delta.c.to_coeff_string(),
            trace.join(",")
        );
        write_string(out, json)
    })
}
