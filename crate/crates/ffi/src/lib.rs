//! C ABI for the k3cover toolkit.
//!
//! Lattices are held behind the opaque handle [`K3cLattice`]; every function
//! returns a [`K3cStatus`] and writes results through out-pointers. Strings
//! returned through `char **` are NUL-terminated, owned by this library and
//! must be released with [`k3c_string_free`]. Structured results (cover
//! reports, candidate lists, verification reports) are JSON documents, with
//! all numbers exact.
//!
//! Pointer contract, shared by every entry point: `const char *` arguments
//! must be valid NUL-terminated strings or null; handle arguments must be
//! null or come from this library and not yet freed; out-pointers must be
//! writable. Null pointers are reported through the status code, never
//! dereferenced. Panics are caught at the boundary and surfaced as
//! `K3C_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use k3cover::covers::{self, BranchConfig};
use k3cover::error::Error;
use k3cover::k3lattices::{self, NamedLatticeId};
use k3cover::lattice::{Lattice, LatticeJson};
use k3cover::verify;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum K3cStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownId = 3,
    Domain = 4,
    DegenerateLattice = 5,
    InvalidGlue = 6,
    Shape = 7,
    Parse = 8,
    Resource = 9,
    InvalidInput = 10,
    VerifyFailed = 11,
    Panic = 12,
}

fn status_of(e: &Error) -> K3cStatus {
    match e {
        Error::Dimension(_) | Error::Shape(_) => K3cStatus::Shape,
        Error::DegenerateLattice(_) => K3cStatus::DegenerateLattice,
        Error::InvalidGlue(_) => K3cStatus::InvalidGlue,
        Error::Domain(_) => K3cStatus::Domain,
        Error::Resource(_) => K3cStatus::Resource,
        Error::UnknownId(_) => K3cStatus::UnknownId,
        Error::Parse(_) => K3cStatus::Parse,
        Error::InvalidInput(_) => K3cStatus::InvalidInput,
    }
}

/// Opaque lattice handle.
pub struct K3cLattice {
    inner: Lattice,
}

fn guard(f: impl FnOnce() -> K3cStatus) -> K3cStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => K3cStatus::Panic,
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, K3cStatus> {
    if ptr.is_null() {
        return Err(K3cStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| K3cStatus::InvalidUtf8)
}

fn write_string(out: *mut *mut c_char, s: String) -> K3cStatus {
    if out.is_null() {
        return K3cStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(cs) => {
            unsafe { *out = cs.into_raw() };
            K3cStatus::Ok
        }
        Err(_) => K3cStatus::InvalidInput,
    }
}

/// Build a named lattice (e.g. "L_9_2", "M_2e4", "K", "U", "U2", "D4",
/// "R2d:6"). On success `*out` owns the handle; free with
/// [`k3c_lattice_free`].
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_build(
    id: *const c_char,
    out: *mut *mut K3cLattice,
) -> K3cStatus {
    guard(|| {
        if out.is_null() {
            return K3cStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let id = match read_str(id) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let parsed = match NamedLatticeId::parse(id) {
            Ok(p) => p,
            Err(e) => return status_of(&e),
        };
        match parsed.build() {
            Ok(lattice) => {
                *out = Box::into_raw(Box::new(K3cLattice { inner: lattice }));
                K3cStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Build a lattice from the shared JSON schema
/// `{"name", "labels", "gram", "glue"}`; glue vectors are applied.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_from_json(
    json: *const c_char,
    out: *mut *mut K3cLattice,
) -> K3cStatus {
    guard(|| {
        if out.is_null() {
            return K3cStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match read_str(json) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let parsed: LatticeJson = match serde_json::from_str(text) {
            Ok(p) => p,
            Err(_) => return K3cStatus::Parse,
        };
        match parsed.resolve() {
            Ok(lattice) => {
                *out = Box::into_raw(Box::new(K3cLattice { inner: lattice }));
                K3cStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release a lattice handle. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_free(lattice: *mut K3cLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Rank of the lattice, or -1 on a null handle.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_rank(lattice: *const K3cLattice) -> i32 {
    if lattice.is_null() {
        return -1;
    }
    (*lattice).inner.rank() as i32
}

/// Determinant of the Gram matrix as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_det(
    lattice: *const K3cLattice,
    out: *mut *mut c_char,
) -> K3cStatus {
    guard(|| {
        if lattice.is_null() {
            return K3cStatus::NullPointer;
        }
        match (*lattice).inner.discriminant() {
            Ok(det) => write_string(out, det.to_string()),
            Err(e) => status_of(&e),
        }
    })
}

/// Inertia (n_plus, n_minus, n_zero) of the Gram form.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_signature(
    lattice: *const K3cLattice,
    n_plus: *mut i32,
    n_minus: *mut i32,
    n_zero: *mut i32,
) -> K3cStatus {
    guard(|| {
        if lattice.is_null() || n_plus.is_null() || n_minus.is_null() || n_zero.is_null() {
            return K3cStatus::NullPointer;
        }
        let (p, m, z) = (*lattice).inner.signature();
        *n_plus = p as i32;
        *n_minus = m as i32;
        *n_zero = z as i32;
        K3cStatus::Ok
    })
}

/// Minimal number of generators of the discriminant group.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_length(
    lattice: *const K3cLattice,
    out: *mut i32,
) -> K3cStatus {
    guard(|| {
        if lattice.is_null() || out.is_null() {
            return K3cStatus::NullPointer;
        }
        match (*lattice).inner.length() {
            Ok(l) => {
                *out = l as i32;
                K3cStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Elementary divisors of the discriminant group, comma separated
/// (empty string for a unimodular lattice).
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_divisors(
    lattice: *const K3cLattice,
    out: *mut *mut c_char,
) -> K3cStatus {
    guard(|| {
        if lattice.is_null() {
            return K3cStatus::NullPointer;
        }
        match (*lattice).inner.discriminant_group() {
            Ok(dg) => {
                let s = dg
                    .elementary_divisors()
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                write_string(out, s)
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Full invariant report of the lattice as a JSON document.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_info_json(
    lattice: *const K3cLattice,
    out: *mut *mut c_char,
) -> K3cStatus {
    guard(|| {
        if lattice.is_null() {
            return K3cStatus::NullPointer;
        }
        match k3lattices::lattice_report(&(*lattice).inner) {
            Ok(v) => write_string(out, v.to_string()),
            Err(e) => status_of(&e),
        }
    })
}

/// Classify a branch configuration given as a comma-separated genus list
/// (e.g. "2,0,0,0,0,0"). The result is the cover-report JSON, or an
/// inadmissibility record with its violated condition.
#[no_mangle]
pub unsafe extern "C" fn k3c_classify(
    genera_csv: *const c_char,
    out: *mut *mut c_char,
) -> K3cStatus {
    guard(|| {
        let text = match read_str(genera_csv) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let cfg = match BranchConfig::parse_csv(text) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        let outcome = covers::classify_branch(&cfg);
        write_string(out, serde_json::to_string(&outcome).expect("serializable"))
    })
}

/// The candidate NS lattices for n branch curves, as JSON.
#[no_mangle]
pub unsafe extern "C" fn k3c_ns_candidates(n: i32, out: *mut *mut c_char) -> K3cStatus {
    guard(|| {
        if n < 0 {
            return K3cStatus::Domain;
        }
        let list = k3lattices::ns_candidates(n as usize);
        write_string(out, serde_json::to_string(&list).expect("serializable"))
    })
}

/// Brute-force rederivation of the candidate list (6 <= n <= 17), as JSON
/// including the per-candidate records.
#[no_mangle]
pub unsafe extern "C" fn k3c_derive_candidates(n: i32, out: *mut *mut c_char) -> K3cStatus {
    guard(|| {
        if n < 0 {
            return K3cStatus::Domain;
        }
        match k3lattices::derive::derive(n as usize) {
            Ok(d) => write_string(out, serde_json::to_string(&d).expect("serializable")),
            Err(e) => status_of(&e),
        }
    })
}

/// Existence verdict for the extremal cases n = 1, 16, 17, as JSON.
#[no_mangle]
pub unsafe extern "C" fn k3c_existence(n: i32, h: i32, out: *mut *mut c_char) -> K3cStatus {
    guard(|| {
        if n < 0 {
            return K3cStatus::Domain;
        }
        match covers::existence(n as usize, h as i64) {
            Ok(v) => write_string(out, serde_json::to_string(&v).expect("serializable")),
            Err(e) => status_of(&e),
        }
    })
}

/// Run the verification suite. `*out` receives the full JSON report either
/// way; the status is OK only when every check passes.
#[no_mangle]
pub unsafe extern "C" fn k3c_verify_paper(out: *mut *mut c_char) -> K3cStatus {
    guard(|| {
        let report = verify::paper_report();
        let status = if report.passed() {
            K3cStatus::Ok
        } else {
            K3cStatus::VerifyFailed
        };
        let st = write_string(out, report.to_json());
        if st != K3cStatus::Ok {
            return st;
        }
        status
    })
}

/// Release a string returned by this library. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn k3c_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn k3c_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
