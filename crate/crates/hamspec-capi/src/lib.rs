//! C ABI for the hamspec library.
//!
//! Conventions: every fallible call returns an [`HsStatus`]; results come
//! back through out-pointers. Point sets are opaque handles freed with
//! [`hs_pointset_free`]; strings returned by the library are NUL-terminated,
//! owned by the caller, and freed with [`hs_string_free`]. Array getters use
//! the two-call pattern: pass a null buffer to query the length. On any
//! non-OK status a human-readable message is retrievable once via
//! [`hs_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use hamspec::error::Error;
use hamspec::report::Report;
use hamspec::{
    erdos_turan_sidon, gap_binary, gap_construction, is_rainbow, make_embedding,
    parse_pointset, prefix_rainbow, rainbow_in_large_set, rho_exact, rw_sphere_trace,
    serialize_pointset, verify_thm1, FieldSpec, PointSet, Word,
};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HsStatus {
    Ok = 0,
    /// Bad parameters, domain errors, or infeasible instances.
    InvalidArgument = 1,
    /// Malformed point-set text.
    ParseError = 2,
    /// A size budget was exceeded.
    ResourceLimit = 3,
    /// A theorem-backed internal check failed; this is a library bug.
    VerificationFailed = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    BufferTooSmall = 7,
}

/// Opaque handle to a set of words sharing one alphabet and dimension.
pub struct HsPointSet(PointSet);

/// Evaluation of the distinct-distance lower bound on one set.
#[repr(C)]
pub struct HsBoundReport {
    pub set_size: u64,
    pub bound_value: f64,
    pub slack: f64,
    pub n: u32,
    pub q: u32,
    pub observed_distances: u32,
    pub holds: bool,
}

/// Summary of the sphere-decomposition trace on a binary set.
#[repr(C)]
pub struct HsSphereTrace {
    pub subset_size: u64,
    pub rw_upper: u64,
    pub pigeonhole_lower: f64,
    pub chosen_r: u32,
    pub class_count: u32,
    pub d_prime: u32,
    pub rw_holds: bool,
    pub rw_tight: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn fail(status: HsStatus, message: impl Into<String>) -> HsStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message.into()));
    status
}

fn fail_error(e: Error) -> HsStatus {
    let status = match e {
        Error::VerificationFailed(_) => HsStatus::VerificationFailed,
        Error::ResourceLimit { .. } => HsStatus::ResourceLimit,
        _ => HsStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// The most recent error message on this thread, or null. The caller owns
/// the returned string and must free it with [`hs_string_free`].
#[no_mangle]
pub extern "C" fn hs_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow_mut().take() {
        Some(msg) => CString::new(msg)
            .unwrap_or_default()
            .into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn hs_status_name(status: HsStatus) -> *const c_char {
    let name: &'static CStr = match status {
        HsStatus::Ok => c"ok",
        HsStatus::InvalidArgument => c"invalid argument",
        HsStatus::ParseError => c"parse error",
        HsStatus::ResourceLimit => c"resource limit",
        HsStatus::VerificationFailed => c"verification failed",
        HsStatus::NullPointer => c"null pointer",
        HsStatus::InvalidUtf8 => c"invalid utf-8",
        HsStatus::BufferTooSmall => c"buffer too small",
    };
    name.as_ptr()
}

/// Static library version string.
#[no_mangle]
pub extern "C" fn hs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned by a hamspec function.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees a point set handle.
///
/// # Safety
/// `set` must be null or a handle previously returned by a hamspec function.
#[no_mangle]
pub unsafe extern "C" fn hs_pointset_free(set: *mut HsPointSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> HsStatus {
    if out.is_null() {
        return fail(HsStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    HsStatus::Ok
}

unsafe fn write_set(out: *mut *mut HsPointSet, set: PointSet) -> HsStatus {
    write_out(out, Box::into_raw(Box::new(HsPointSet(set))))
}

unsafe fn borrow_set<'a>(set: *const HsPointSet) -> Result<&'a PointSet, HsStatus> {
    if set.is_null() {
        Err(fail(HsStatus::NullPointer, "point set handle is null"))
    } else {
        Ok(&(*set).0)
    }
}

/// Parses the point-set text format (`q n` header, one word per line).
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_pointset_parse(
    text: *const c_char,
    out: *mut *mut HsPointSet,
) -> HsStatus {
    if text.is_null() {
        return fail(HsStatus::NullPointer, "input text is null");
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(t) => t,
        Err(_) => return fail(HsStatus::InvalidUtf8, "input text is not valid UTF-8"),
    };
    match parse_pointset(text) {
        Ok(set) => write_set(out, set),
        Err(e) => fail(HsStatus::ParseError, e.to_string()),
    }
}

/// Builds a point set from `row_count` rows of `n` symbols each, row-major.
///
/// # Safety
/// `symbols` must point to `row_count * n` readable u16 values.
#[no_mangle]
pub unsafe extern "C" fn hs_pointset_from_rows(
    q: u32,
    n: u32,
    row_count: usize,
    symbols: *const u16,
    out: *mut *mut HsPointSet,
) -> HsStatus {
    if symbols.is_null() && row_count > 0 {
        return fail(HsStatus::NullPointer, "symbol buffer is null");
    }
    let data = std::slice::from_raw_parts(symbols, row_count * n as usize);
    let words: Result<Vec<Word>, Error> = data
        .chunks_exact(n as usize)
        .map(|row| Word::new(q, row))
        .collect();
    let set = words.and_then(|w| PointSet::new(q, n, w));
    match set {
        Ok(set) => write_set(out, set),
        Err(e) => fail_error(e),
    }
}

/// Serializes a point set to the canonical text format.
#[no_mangle]
pub unsafe extern "C" fn hs_pointset_to_text(
    set: *const HsPointSet,
    out: *mut *mut c_char,
) -> HsStatus {
    let set = match borrow_set(set) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let text = serialize_pointset(set);
    match CString::new(text) {
        Ok(s) => write_out(out, s.into_raw()),
        Err(_) => fail(HsStatus::InvalidUtf8, "serialized text contained NUL"),
    }
}

#[no_mangle]
pub unsafe extern "C" fn hs_pointset_size(set: *const HsPointSet, out: *mut u64) -> HsStatus {
    match borrow_set(set) {
        Ok(s) => write_out(out, s.len() as u64),
        Err(status) => status,
    }
}

#[no_mangle]
pub unsafe extern "C" fn hs_pointset_alphabet(set: *const HsPointSet, out: *mut u32) -> HsStatus {
    match borrow_set(set) {
        Ok(s) => write_out(out, s.q()),
        Err(status) => status,
    }
}

#[no_mangle]
pub unsafe extern "C" fn hs_pointset_dimension(set: *const HsPointSet, out: *mut u32) -> HsStatus {
    match borrow_set(set) {
        Ok(s) => write_out(out, s.n()),
        Err(status) => status,
    }
}

/// Copies the sorted distinct pairwise distances into `values`. Pass a null
/// buffer to query the length; at most `n` distances ever exist.
#[no_mangle]
pub unsafe extern "C" fn hs_distance_set(
    set: *const HsPointSet,
    values: *mut u32,
    capacity: usize,
    len: *mut usize,
) -> HsStatus {
    let set = match borrow_set(set) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let ds = set.distance_set();
    let status = write_out(len, ds.len());
    if status != HsStatus::Ok {
        return status;
    }
    if values.is_null() {
        return HsStatus::Ok;
    }
    if capacity < ds.len() {
        return fail(
            HsStatus::BufferTooSmall,
            format!("need capacity {}, got {capacity}", ds.len()),
        );
    }
    std::ptr::copy_nonoverlapping(ds.values().as_ptr(), values, ds.len());
    HsStatus::Ok
}

/// Generates the q-ary simplex code S_q(m); `budget` caps the codeword count
/// (0 selects the default).
#[no_mangle]
pub unsafe extern "C" fn hs_simplex(
    q: u32,
    m: u32,
    budget: u64,
    out: *mut *mut HsPointSet,
) -> HsStatus {
    let budget = if budget == 0 {
        hamspec::simplex::DEFAULT_SIZE_BUDGET
    } else {
        budget
    };
    let result = FieldSpec::from_order(q)
        .and_then(|f| hamspec::simplex::generate_simplex_with_budget(&f, m, budget));
    match result {
        Ok(code) => write_set(out, code.to_pointset()),
        Err(e) => fail_error(e),
    }
}

/// Builds the k-distance set in [q]^n (k-fold simplex product, zero padded).
/// `exact` reports whether the full product was materialized.
#[no_mangle]
pub unsafe extern "C" fn hs_few_distance_set(
    q: u32,
    n: u32,
    k: u32,
    budget: u64,
    seed: u64,
    out: *mut *mut HsPointSet,
    exact: *mut bool,
) -> HsStatus {
    let budget = if budget == 0 {
        hamspec::simplex::DEFAULT_SIZE_BUDGET
    } else {
        budget
    };
    let result = FieldSpec::from_order(q)
        .and_then(|f| hamspec::few_distance_set_with(&f, n, k, budget, seed));
    match result {
        Ok(fd) => {
            if !exact.is_null() {
                exact.write(fd.exact);
            }
            write_set(out, fd.set)
        }
        Err(e) => fail_error(e),
    }
}

/// Embeds a set into binary space, scaling every distance by the same factor.
#[no_mangle]
pub unsafe extern "C" fn hs_embed(
    set: *const HsPointSet,
    out: *mut *mut HsPointSet,
) -> HsStatus {
    let set = match borrow_set(set) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let result = make_embedding(set.q()).and_then(|e| e.embed_set(set));
    match result {
        Ok(image) => write_set(out, image),
        Err(e) => fail_error(e),
    }
}

/// Evaluates the distinct-distance lower bound on a set of >= 2 points.
#[no_mangle]
pub unsafe extern "C" fn hs_verify_bound(
    set: *const HsPointSet,
    out: *mut HsBoundReport,
) -> HsStatus {
    let set = match borrow_set(set) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match verify_thm1(set) {
        Ok(r) => write_out(
            out,
            HsBoundReport {
                set_size: r.set_size,
                bound_value: r.bound_value,
                slack: r.slack,
                n: r.n,
                q: r.q,
                observed_distances: r.observed_distances,
                holds: r.holds,
            },
        ),
        Err(e) => fail_error(e),
    }
}

/// Computes the sphere-decomposition trace of a binary set.
#[no_mangle]
pub unsafe extern "C" fn hs_sphere_trace(
    set: *const HsPointSet,
    out: *mut HsSphereTrace,
) -> HsStatus {
    let set = match borrow_set(set) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match rw_sphere_trace(set) {
        Ok(t) => {
            let tight = t.is_tight();
            write_out(
                out,
                HsSphereTrace {
                    subset_size: t.subset_size,
                    rw_upper: t.rw_upper,
                    pigeonhole_lower: t.pigeonhole_lower,
                    chosen_r: t.chosen_r,
                    class_count: t.distance_classes.len() as u32,
                    d_prime: t.d_prime,
                    rw_holds: t.rw_holds,
                    rw_tight: tight,
                },
            )
        }
        Err(e) => fail_error(e),
    }
}

/// Full analysis (distances, bound, trace) as one JSON report, matching the
/// CLI `analyze` output byte for byte.
#[no_mangle]
pub unsafe extern "C" fn hs_analyze_json(
    set: *const HsPointSet,
    seed: u64,
    out: *mut *mut c_char,
) -> HsStatus {
    let set = match borrow_set(set) {
        Ok(s) => s,
        Err(status) => return status,
    };
    if set.len() < 2 {
        return fail(HsStatus::InvalidArgument, "analysis needs at least 2 points");
    }
    let bound = match verify_thm1(set) {
        Ok(b) => b,
        Err(e) => return fail_error(e),
    };
    let ds = set.distance_set();
    let mut report = Report {
        command: "analyze".into(),
        seed,
        q: set.q(),
        n: set.n() as u64,
        size: set.len() as u64,
        distance_set: ds.values().to_vec(),
        delta_size: ds.len() as u64,
        bound_value: bound.bound_value,
        thm1_holds: bound.holds,
        ..Default::default()
    };
    if set.q() == 2 {
        match rw_sphere_trace(set) {
            Ok(trace) => {
                if trace.is_tight() {
                    report.flags.push("rw_tight".into());
                }
                report.sphere_trace = Some(trace);
            }
            Err(e) => return fail_error(e),
        }
    }
    match CString::new(report.to_json()) {
        Ok(s) => write_out(out, s.into_raw()),
        Err(_) => fail(HsStatus::InvalidUtf8, "report contained NUL"),
    }
}

/// True iff all pairwise distances of the set are distinct.
#[no_mangle]
pub unsafe extern "C" fn hs_is_rainbow(set: *const HsPointSet, out: *mut bool) -> HsStatus {
    match borrow_set(set) {
        Ok(s) => write_out(out, is_rainbow(s).is_rainbow),
        Err(status) => status,
    }
}

/// Exact maximum rainbow subset search. `witness` may be null when only the
/// size is wanted; `exact` reports whether the node budget sufficed
/// (0 selects the default budget).
#[no_mangle]
pub unsafe extern "C" fn hs_rho_exact(
    set: *const HsPointSet,
    node_budget: u64,
    size: *mut u64,
    exact: *mut bool,
    witness: *mut *mut HsPointSet,
) -> HsStatus {
    let set = match borrow_set(set) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let budget = if node_budget == 0 {
        hamspec::rainbow::DEFAULT_RHO_BUDGET
    } else {
        node_budget
    };
    match rho_exact(set, budget) {
        Ok(outcome) => {
            let status = write_out(size, outcome.witness.size);
            if status != HsStatus::Ok {
                return status;
            }
            if !exact.is_null() {
                exact.write(outcome.exact);
            }
            if witness.is_null() {
                HsStatus::Ok
            } else {
                write_set(witness, outcome.witness.subset)
            }
        }
        Err(e) => fail_error(e),
    }
}

/// The (n+1)-point gap set over {0..n}, or its binary embedded image.
#[no_mangle]
pub unsafe extern "C" fn hs_gap(n: u32, binary: bool, out: *mut *mut HsPointSet) -> HsStatus {
    let result = if binary {
        gap_binary(n)
    } else {
        gap_construction(n)
    };
    match result {
        Ok(set) => write_set(out, set),
        Err(e) => fail_error(e),
    }
}

/// The quadratic Sidon set inside {1..n}; two-call pattern like
/// [`hs_distance_set`].
#[no_mangle]
pub unsafe extern "C" fn hs_sidon(
    n: u64,
    elements: *mut u64,
    capacity: usize,
    len: *mut usize,
) -> HsStatus {
    match erdos_turan_sidon(n) {
        Ok(b) => {
            let status = write_out(len, b.len());
            if status != HsStatus::Ok {
                return status;
            }
            if elements.is_null() {
                return HsStatus::Ok;
            }
            if capacity < b.len() {
                return fail(
                    HsStatus::BufferTooSmall,
                    format!("need capacity {}, got {capacity}", b.len()),
                );
            }
            std::ptr::copy_nonoverlapping(b.elements().as_ptr(), elements, b.len());
            HsStatus::Ok
        }
        Err(e) => fail_error(e),
    }
}

/// The rainbow set of prefix vectors built from the quadratic Sidon set.
#[no_mangle]
pub unsafe extern "C" fn hs_prefix_rainbow(n: u32, out: *mut *mut HsPointSet) -> HsStatus {
    match prefix_rainbow(n) {
        Ok(report) => write_set(out, report.subset),
        Err(e) => fail_error(e),
    }
}

/// Chain/Sidon rainbow extraction on a binary set. `chain_size` and
/// `below_guarantee` may be null; `budget` of 0 selects the default.
#[no_mangle]
pub unsafe extern "C" fn hs_pipeline(
    set: *const HsPointSet,
    seed: u64,
    budget: u64,
    out: *mut *mut HsPointSet,
    chain_size: *mut u64,
    below_guarantee: *mut bool,
) -> HsStatus {
    let set = match borrow_set(set) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let budget = if budget == 0 {
        hamspec::rainbow::DEFAULT_CHAIN_BUDGET
    } else {
        budget
    };
    match rainbow_in_large_set(set, seed, budget) {
        Ok(outcome) => {
            if !chain_size.is_null() {
                chain_size.write(outcome.chain.as_ref().map_or(0, |c| c.chain.len() as u64));
            }
            if !below_guarantee.is_null() {
                below_guarantee.write(outcome.below_guarantee);
            }
            write_set(out, outcome.report.subset)
        }
        Err(e) => fail_error(e),
    }
}
