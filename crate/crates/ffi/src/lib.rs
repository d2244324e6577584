//! C ABI for `itercomp`.
//!
//! Objects cross the boundary as opaque handles created by `itc_*_new` or
//! `itc_*_parse` style functions and released with the matching `*_free`.
//! Every fallible function returns an [`ItcStatus`]; on failure a message is
//! kept per thread and can be read with [`itc_last_error`]. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with [`itc_string_free`]. Panics never cross the boundary: they
//! are reported as [`ItcStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use itercomp::classify::{classify_pair, PairClass};
use itercomp::cli::ResultRow;
use itercomp::poly::parse_field;
use itercomp::profile::{profile_direct, profile_via_roots};
use itercomp::{Config, Error, Field, IterProfile, Poly};

/// A finite field `F_q`.
pub struct ItcField(Field);

/// A polynomial over an [`ItcField`].
pub struct ItcPoly(Poly);

/// The arithmetic functions and factor census of one `f(g^(n)(x))`.
pub struct ItcProfile(IterProfile);

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    /// A degree, extension or integer limit was exceeded.
    Cap = 5,
    NotGeneric = 6,
    WitnessExhausted = 7,
    /// An internal consistency check failed.
    Assertion = 8,
    OutOfRange = 9,
    Panic = 10,
}

/// How [`itc_profile_compute`] obtains the profile.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItcMode {
    /// Factor `f(g^(n)(x))` itself.
    Direct = 0,
    /// Factor `g^(n)(x) - alpha` over the field of a root `alpha` of each
    /// irreducible factor of `f`.
    ViaRoot = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ItcPairClass {
    Critical = 0,
    PCritical = 1,
    Generic = 2,
}

/// Resource limits; obtain defaults from [`itc_config_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ItcConfig {
    pub degree_cap: u64,
    pub seed: u64,
    pub ambient_cap: u32,
}

/// The seven arithmetic functions for one `n`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ItcProfileValues {
    pub n: u32,
    /// Largest multiplicity `E`.
    pub max_mult: u64,
    /// Smallest multiplicity `e`.
    pub min_mult: u64,
    /// Degree of the squarefree part.
    pub delta: u64,
    /// Largest factor degree `M`.
    pub max_deg: u64,
    /// Smallest factor degree `m`.
    pub min_deg: u64,
    /// Number of distinct irreducible factors `N`.
    pub count: u64,
}

/// `count` distinct irreducible factors of the given degree and multiplicity.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ItcCensusRow {
    pub degree: u64,
    pub multiplicity: u64,
    pub count: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("interior nul removed"));
}

fn status_of(e: &Error) -> ItcStatus {
    match e {
        Error::Parse { .. } => ItcStatus::Parse,
        Error::DegreeOverflow { .. } | Error::FieldCapExceeded { .. } | Error::Overflow(_) => ItcStatus::Cap,
        Error::NotGeneric(_) => ItcStatus::NotGeneric,
        Error::WitnessSearchExhausted(_) => ItcStatus::WitnessExhausted,
        Error::HypothesisViolated(_) => ItcStatus::Assertion,
        _ => ItcStatus::InvalidInput,
    }
}

type FfiResult<T> = Result<T, ItcStatus>;

fn fail<T>(status: ItcStatus, msg: impl Into<String>) -> FfiResult<T> {
    set_error(msg);
    Err(status)
}

impl From<Error> for ItcStatus {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        status_of(&e)
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> ItcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            ItcStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            ItcStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return fail(ItcStatus::NullPointer, format!("{what} is null"));
    }
    match CStr::from_ptr(p).to_str() {
        Ok(s) => Ok(s),
        Err(_) => fail(ItcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")),
    }
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    match p.as_ref() {
        Some(r) => Ok(r),
        None => fail(ItcStatus::NullPointer, format!("{what} is null")),
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return fail(ItcStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).map_err(|_| {
        set_error("string contains a nul byte");
        ItcStatus::Assertion
    })?;
    write_out(out, c.into_raw())
}

/// Message of the most recent `itc_*` call on this thread, empty when that
/// call succeeded. The pointer stays valid until the next call on the same
/// thread.
#[no_mangle]
pub extern "C" fn itc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn itc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from an `itc_*` out-parameter and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn itc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn itc_config_default() -> ItcConfig {
    let c = Config::default();
    ItcConfig { degree_cap: c.degree_cap as u64, seed: c.seed, ambient_cap: c.ambient_cap }
}

fn config_from(cfg: Option<&ItcConfig>) -> Config {
    match cfg {
        None => Config::default(),
        Some(c) => Config {
            degree_cap: usize::try_from(c.degree_cap).unwrap_or(usize::MAX),
            seed: c.seed,
            ambient_cap: c.ambient_cap,
        },
    }
}

/// Creates a field from `p`, `p^m` or a prime power `q`, with an optional
/// modulus in `t` (null for the default).
///
/// # Safety
/// String arguments must be null or nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn itc_field_new(
    text: *const c_char,
    modulus: *const c_char,
    out: *mut *mut ItcField,
) -> ItcStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let modulus = if modulus.is_null() { None } else { Some(str_arg(modulus, "modulus")?) };
        let field = parse_field(text, modulus)?;
        write_out(out, Box::into_raw(Box::new(ItcField(field))))
    })
}

/// # Safety
/// `field` must be null or a handle from [`itc_field_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn itc_field_free(field: *mut ItcField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Number of elements `q` of the field, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn itc_field_order(field: *const ItcField) -> u64 {
    field.as_ref().map_or(0, |f| f.0.order())
}

/// Parses a polynomial in `x` over `field`.
///
/// # Safety
/// `field` must be a live handle, `text` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itc_poly_parse(
    field: *const ItcField,
    text: *const c_char,
    out: *mut *mut ItcPoly,
) -> ItcStatus {
    guard(|| {
        let field = ref_arg(field, "field")?;
        let text = str_arg(text, "text")?;
        let poly = Poly::parse(&field.0, text)?;
        write_out(out, Box::into_raw(Box::new(ItcPoly(poly))))
    })
}

/// # Safety
/// `poly` must be null or a handle from [`itc_poly_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn itc_poly_free(poly: *mut ItcPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Canonical text of `poly`; it parses back to an equal polynomial.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itc_poly_to_string(poly: *const ItcPoly, out: *mut *mut c_char) -> ItcStatus {
    guard(|| {
        let poly = ref_arg(poly, "poly")?;
        write_string(out, poly.0.to_string())
    })
}

/// Classifies `(f, g)`; `deg f >= 1` and `deg g >= 2` are required.
///
/// # Safety
/// `f` and `g` must be live handles over the same field; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itc_classify(f: *const ItcPoly, g: *const ItcPoly, out: *mut ItcPairClass) -> ItcStatus {
    guard(|| {
        let (f, g) = (ref_arg(f, "f")?, ref_arg(g, "g")?);
        let class = match classify_pair(&f.0, &g.0)? {
            PairClass::Critical { .. } => ItcPairClass::Critical,
            PairClass::PCritical { .. } => ItcPairClass::PCritical,
            PairClass::Generic(_) => ItcPairClass::Generic,
        };
        write_out(out, class)
    })
}

/// Computes the profile of `f(g^(n)(x))`. `cfg` may be null for defaults.
/// Degenerate pairs are accepted; use [`itc_classify`] to reject them.
///
/// # Safety
/// `f` and `g` must be live handles, `cfg` null or readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itc_profile_compute(
    f: *const ItcPoly,
    g: *const ItcPoly,
    n: u32,
    mode: ItcMode,
    cfg: *const ItcConfig,
    out: *mut *mut ItcProfile,
) -> ItcStatus {
    guard(|| {
        let (f, g) = (ref_arg(f, "f")?, ref_arg(g, "g")?);
        let cfg = config_from(cfg.as_ref());
        let profile = match mode {
            ItcMode::Direct => profile_direct(&f.0, &g.0, n, &cfg)?,
            ItcMode::ViaRoot => profile_via_roots(&f.0, &g.0, n, &cfg)?,
        };
        write_out(out, Box::into_raw(Box::new(ItcProfile(profile))))
    })
}

/// # Safety
/// `profile` must be null or a handle from [`itc_profile_compute`], freed once.
#[no_mangle]
pub unsafe extern "C" fn itc_profile_free(profile: *mut ItcProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// # Safety
/// `profile` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itc_profile_values(profile: *const ItcProfile, out: *mut ItcProfileValues) -> ItcStatus {
    guard(|| {
        let p = &ref_arg(profile, "profile")?.0;
        write_out(
            out,
            ItcProfileValues {
                n: p.n,
                max_mult: p.max_mult,
                min_mult: p.min_mult,
                delta: p.delta,
                max_deg: p.max_deg,
                min_deg: p.min_deg,
                count: p.count,
            },
        )
    })
}

/// Number of census rows, or 0 for a null handle. Rows are sorted by
/// degree, then multiplicity.
///
/// # Safety
/// `profile` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn itc_profile_census_len(profile: *const ItcProfile) -> usize {
    profile.as_ref().map_or(0, |p| p.0.census.rows.len())
}

/// # Safety
/// `profile` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itc_profile_census_row(
    profile: *const ItcProfile,
    index: usize,
    out: *mut ItcCensusRow,
) -> ItcStatus {
    guard(|| {
        let rows = &ref_arg(profile, "profile")?.0.census.rows;
        let Some(r) = rows.get(index) else {
            return fail(ItcStatus::OutOfRange, format!("row {index} of {}", rows.len()));
        };
        write_out(out, ItcCensusRow { degree: r.degree, multiplicity: r.multiplicity, count: r.count })
    })
}

/// The profile as one JSON object in the layout of `itercomp profile
/// --format json`.
///
/// # Safety
/// `profile` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn itc_profile_to_json(profile: *const ItcProfile, out: *mut *mut c_char) -> ItcStatus {
    guard(|| {
        let p = &ref_arg(profile, "profile")?.0;
        let mut v = serde_json::to_value(ResultRow::new(p, None)).map_err(|e| {
            set_error(e.to_string());
            ItcStatus::Assertion
        })?;
        v.as_object_mut().expect("row is an object").insert("schema".into(), 1.into());
        write_string(out, v.to_string())
    })
}
