//! C ABI for the spreclone library.
//!
//! Objects are exposed as opaque handles created from JSON and freed
//! with the matching `sp_*_free`. Functions return `SpStatus`; on
//! `SP_STATUS_ERROR` a message is available via `sp_last_error`
//! (thread local, valid until the next failing call on the same
//! thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use spreclone::galois;
use spreclone::json::{CertificateFile, MonoidFile, OpFile, RelationFile};
use spreclone::monoid::Monoid;
use spreclone::ops::SignedOp;
use spreclone::rel::SRelation;

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum SpStatus {
    /// Call succeeded.
    SpStatusOk = 0,
    /// Call failed; see `sp_last_error`.
    SpStatusError = 1,
    /// A required pointer argument was null.
    SpStatusNullArgument = 2,
}

pub struct SpMonoid {
    inner: Monoid,
}

pub struct SpOp {
    inner: SignedOp,
}

pub struct SpRel {
    inner: SRelation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) -> SpStatus {
    let message = CString::new(message)
        .unwrap_or_else(|_| CString::new("invalid error message").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
    SpStatus::SpStatusError
}

/// Message of the most recent error on this thread, or null. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map_or(ptr::null(), |msg| msg.as_ptr())
    })
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

/// Creates a builtin monoid by name (`trivial`, `z2`, `z3`, `sprime`,
/// `shat`).
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_monoid_builtin(
    name: *const c_char,
    out: *mut *mut SpMonoid,
) -> SpStatus {
    let Some(name) = read_str(name) else {
        return SpStatus::SpStatusNullArgument;
    };
    if out.is_null() {
        return SpStatus::SpStatusNullArgument;
    }
    match Monoid::builtin(name) {
        Ok(monoid) => {
            *out = Box::into_raw(Box::new(SpMonoid { inner: monoid }));
            SpStatus::SpStatusOk
        }
        Err(err) => set_error(err.to_string()),
    }
}

/// Parses a monoid from its JSON file format.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_monoid_from_json(
    json: *const c_char,
    out: *mut *mut SpMonoid,
) -> SpStatus {
    let Some(text) = read_str(json) else {
        return SpStatus::SpStatusNullArgument;
    };
    if out.is_null() {
        return SpStatus::SpStatusNullArgument;
    }
    let parsed: Result<MonoidFile, _> = serde_json::from_str(text);
    let monoid = match parsed {
        Ok(file) => file.to_monoid(),
        Err(err) => return set_error(err.to_string()),
    };
    match monoid {
        Ok(monoid) => {
            *out = Box::into_raw(Box::new(SpMonoid { inner: monoid }));
            SpStatus::SpStatusOk
        }
        Err(err) => set_error(err.to_string()),
    }
}

/// Parses a signed operation from its JSON file format.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `monoid` and `out`
/// must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sp_op_from_json(
    json: *const c_char,
    monoid: *const SpMonoid,
    out: *mut *mut SpOp,
) -> SpStatus {
    let Some(text) = read_str(json) else {
        return SpStatus::SpStatusNullArgument;
    };
    if monoid.is_null() || out.is_null() {
        return SpStatus::SpStatusNullArgument;
    }
    let parsed: Result<OpFile, _> = serde_json::from_str(text);
    let op = match parsed {
        Ok(file) => file.to_op(&(*monoid).inner),
        Err(err) => return set_error(err.to_string()),
    };
    match op {
        Ok(op) => {
            *out = Box::into_raw(Box::new(SpOp { inner: op }));
            SpStatus::SpStatusOk
        }
        Err(err) => set_error(err.to_string()),
    }
}

/// Parses a signed relation from its JSON file format.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `monoid` and `out`
/// must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sp_rel_from_json(
    json: *const c_char,
    monoid: *const SpMonoid,
    out: *mut *mut SpRel,
) -> SpStatus {
    let Some(text) = read_str(json) else {
        return SpStatus::SpStatusNullArgument;
    };
    if monoid.is_null() || out.is_null() {
        return SpStatus::SpStatusNullArgument;
    }
    let parsed: Result<RelationFile, _> = serde_json::from_str(text);
    let rel = match parsed {
        Ok(file) => file.to_srelation(&(*monoid).inner),
        Err(err) => return set_error(err.to_string()),
    };
    match rel {
        Ok(rel) => {
            *out = Box::into_raw(Box::new(SpRel { inner: rel }));
            SpStatus::SpStatusOk
        }
        Err(err) => set_error(err.to_string()),
    }
}

/// Preservation check: writes 1 to `out` if `op` preserves `rel`,
/// else 0.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_preserves(
    op: *const SpOp,
    rel: *const SpRel,
    monoid: *const SpMonoid,
    out: *mut i32,
) -> SpStatus {
    if op.is_null() || rel.is_null() || monoid.is_null() || out.is_null() {
        return SpStatus::SpStatusNullArgument;
    }
    *out = galois::preserves(&(*op).inner, &(*rel).inner, &(*monoid).inner) as i32;
    SpStatus::SpStatusOk
}

/// Membership of `op` in the preclone generated by `gens`; writes 1
/// or 0 to `out`.
///
/// # Safety
/// `gens` must point to `gens_len` valid op handles; all pointers
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_membership(
    op: *const SpOp,
    gens: *const *const SpOp,
    gens_len: usize,
    monoid: *const SpMonoid,
    out: *mut i32,
) -> SpStatus {
    if op.is_null() || monoid.is_null() || out.is_null() {
        return SpStatus::SpStatusNullArgument;
    }
    if gens.is_null() && gens_len > 0 {
        return SpStatus::SpStatusNullArgument;
    }
    let mut gen_ops = Vec::with_capacity(gens_len);
    for i in 0..gens_len {
        let g = *gens.add(i);
        if g.is_null() {
            return SpStatus::SpStatusNullArgument;
        }
        gen_ops.push((*g).inner.clone());
    }
    match galois::membership(&(*op).inner, &gen_ops, &(*monoid).inner) {
        Ok(member) => {
            *out = member as i32;
            SpStatus::SpStatusOk
        }
        Err(err) => set_error(err.to_string()),
    }
}

/// Membership certificate as JSON, or an empty string when `op` is a
/// member. The result must be freed with `sp_string_free`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_membership_certificate_json(
    op: *const SpOp,
    gens: *const *const SpOp,
    gens_len: usize,
    monoid: *const SpMonoid,
    out: *mut *mut c_char,
) -> SpStatus {
    if op.is_null() || monoid.is_null() || out.is_null() {
        return SpStatus::SpStatusNullArgument;
    }
    if gens.is_null() && gens_len > 0 {
        return SpStatus::SpStatusNullArgument;
    }
    let mut gen_ops = Vec::with_capacity(gens_len);
    for i in 0..gens_len {
        let g = *gens.add(i);
        if g.is_null() {
            return SpStatus::SpStatusNullArgument;
        }
        gen_ops.push((*g).inner.clone());
    }
    let m = &(*monoid).inner;
    match galois::membership_certificate(&(*op).inner, &gen_ops, m) {
        Ok(None) => write_string(String::new(), out),
        Ok(Some(witness)) => {
            let cert = CertificateFile::from_witness(&witness, m);
            write_string(serde_json::to_string(&cert).unwrap(), out)
        }
        Err(err) => set_error(err.to_string()),
    }
}

/// Invariant closure of `rel` under `gens`, serialized as a relation
/// JSON document. The result must be freed with `sp_string_free`.
///
/// # Safety
/// `gens` must point to `gens_len` valid op handles; all pointers
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_gamma_closure_json(
    gens: *const *const SpOp,
    gens_len: usize,
    rel: *const SpRel,
    monoid: *const SpMonoid,
    out: *mut *mut c_char,
) -> SpStatus {
    if rel.is_null() || monoid.is_null() || out.is_null() {
        return SpStatus::SpStatusNullArgument;
    }
    if gens.is_null() && gens_len > 0 {
        return SpStatus::SpStatusNullArgument;
    }
    let mut gen_ops = Vec::with_capacity(gens_len);
    for i in 0..gens_len {
        let g = *gens.add(i);
        if g.is_null() {
            return SpStatus::SpStatusNullArgument;
        }
        gen_ops.push((*g).inner.clone());
    }
    let m = &(*monoid).inner;
    let report = galois::gamma_closure(&gen_ops, &(*rel).inner, m);
    let file = RelationFile::from_srelation(&report.result, m);
    write_string(serde_json::to_string(&file).unwrap(), out)
}

/// The generic-argument relation for a signum literal (e.g. `+,-`),
/// serialized as a relation JSON document. The result must be freed
/// with `sp_string_free`.
///
/// # Safety
/// `signum` must be a valid NUL-terminated string; all pointers must
/// be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_chi_json(
    domain_size: usize,
    signum: *const c_char,
    monoid: *const SpMonoid,
    out: *mut *mut c_char,
) -> SpStatus {
    let Some(literal) = read_str(signum) else {
        return SpStatus::SpStatusNullArgument;
    };
    if monoid.is_null() || out.is_null() {
        return SpStatus::SpStatusNullArgument;
    }
    let m = &(*monoid).inner;
    let lambda = match spreclone::json::parse_signum_literal(literal, m) {
        Ok(lambda) => lambda,
        Err(err) => return set_error(err.to_string()),
    };
    match galois::chi(domain_size, &lambda, m) {
        Ok(chi) => {
            let file = RelationFile::from_srelation(&chi.rel, m);
            write_string(serde_json::to_string(&file).unwrap(), out)
        }
        Err(err) => set_error(err.to_string()),
    }
}

unsafe fn write_string(s: String, out: *mut *mut c_char) -> SpStatus {
    match CString::new(s) {
        Ok(cstring) => {
            *out = cstring.into_raw();
            SpStatus::SpStatusOk
        }
        Err(_) => set_error("output contained a NUL byte".into()),
    }
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be a pointer returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `monoid` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn sp_monoid_free(monoid: *mut SpMonoid) {
    if !monoid.is_null() {
        drop(Box::from_raw(monoid));
    }
}

/// # Safety
/// `op` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn sp_op_free(op: *mut SpOp) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// # Safety
/// `rel` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn sp_rel_free(rel: *mut SpRel) {
    if !rel.is_null() {
        drop(Box::from_raw(rel));
    }
}
