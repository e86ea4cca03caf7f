//! C ABI for the multfree toolkit.
//!
//! Conventions:
//! - every fallible call returns an [`MfStatus`]; `MF_STATUS_OK` means the
//!   out-parameters were filled;
//! - handles (`MfField`, `MfGroup`) are opaque and freed with their
//!   matching `_free` function;
//! - strings returned through out-parameters are owned by the caller and
//!   released with `mf_string_free`;
//! - on failure, `mf_last_error_message` returns a thread-local message
//!   valid until the next failing call on the same thread.
//!
//! The generated header lives at `include/multfree.h`.

use multfree::error::Error;
use multfree::field::FieldCtx;
use multfree::groups::FiniteGroup;
use multfree::homalg::hecke_algebra_convolution;
use multfree::verdicts::report::MachineReport;
use multfree::verdicts::spec::{parse_character, parse_group, parse_subgroup};
use multfree::verdicts::suites::run_suite;
use multfree::verdicts::{run_scenario, RunConfig, Scenario};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes for every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[allow(non_camel_case_types)]
pub enum MfStatus {
    MF_STATUS_OK = 0,
    MF_STATUS_PARSE_ERROR = 1,
    MF_STATUS_CAP_EXCEEDED = 2,
    MF_STATUS_INCONCLUSIVE = 3,
    MF_STATUS_THEOREM_VIOLATION = 4,
    MF_STATUS_CERTIFICATION_FAILED = 5,
    MF_STATUS_NULL_POINTER = 6,
    MF_STATUS_INTERNAL_ERROR = 7,
}

/// Opaque finite-field handle.
pub struct MfField(FieldCtx);
/// Opaque group handle.
pub struct MfGroup(FiniteGroup);

/// Hecke-algebra summary filled by `mf_hecke_info`.
#[repr(C)]
pub struct MfHeckeInfo {
    pub dim: u64,
    pub commutative: bool,
    pub double_cosets: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

fn status_of(e: &Error) -> MfStatus {
    match e {
        Error::Parse(_) | Error::NonPrime(_) => MfStatus::MF_STATUS_PARSE_ERROR,
        Error::SizeCapExceeded(_) | Error::CapExceeded(_) => MfStatus::MF_STATUS_CAP_EXCEEDED,
        Error::IncompleteLattice(_) | Error::RandomBudgetExhausted { .. } => MfStatus::MF_STATUS_INCONCLUSIVE,
        Error::TheoremViolation(_) => MfStatus::MF_STATUS_THEOREM_VIOLATION,
        Error::CertificationFailed(_) | Error::SplittingFieldInsufficient { .. } | Error::UncertifiedInventory => {
            MfStatus::MF_STATUS_CERTIFICATION_FAILED
        }
        _ => MfStatus::MF_STATUS_INTERNAL_ERROR,
    }
}

fn fail(e: &Error) -> MfStatus {
    set_error(&e.to_string());
    status_of(e)
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, MfStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(MfStatus::MF_STATUS_NULL_POINTER);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid utf-8");
        MfStatus::MF_STATUS_PARSE_ERROR
    })
}

fn guarded<F: FnOnce() -> MfStatus>(f: F) -> MfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in native code".into());
            set_error(&msg);
            MfStatus::MF_STATUS_INTERNAL_ERROR
        }
    }
}

/// Library version string; static storage, do not free.
#[no_mangle]
pub extern "C" fn mf_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread; valid until the
/// next failing call. Do not free.
#[no_mangle]
pub extern "C" fn mf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string previously returned through an out-parameter.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library.
#[no_mangle]
pub unsafe extern "C" fn mf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a finite field from a spec string like "gf(3,2)".
///
/// # Safety
/// `spec` must be a valid NUL-terminated string; `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn mf_field_new(spec: *const c_char, out: *mut *mut MfField) -> MfStatus {
    if out.is_null() {
        set_error("null out-parameter");
        return MfStatus::MF_STATUS_NULL_POINTER;
    }
    let spec = match read_str(spec) {
        Ok(s) => s,
        Err(st) => return st,
    };
    guarded(|| match FieldCtx::parse(spec) {
        Ok(ctx) => {
            *out = Box::into_raw(Box::new(MfField(ctx)));
            MfStatus::MF_STATUS_OK
        }
        Err(e) => fail(&e),
    })
}

/// Field size q = p^k, or 0 on a null handle.
///
/// # Safety
/// `field` must be null or a pointer from `mf_field_new`.
#[no_mangle]
pub unsafe extern "C" fn mf_field_order(field: *const MfField) -> u64 {
    if field.is_null() {
        return 0;
    }
    (*field).0.q()
}

/// # Safety
/// `field` must be null or a pointer from `mf_field_new`, freed once.
#[no_mangle]
pub unsafe extern "C" fn mf_field_free(field: *mut MfField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Builds a group from a spec string like "sym(4)" or "gl(2,3,1)".
///
/// # Safety
/// `spec` must be a valid NUL-terminated string; `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn mf_group_new(spec: *const c_char, out: *mut *mut MfGroup) -> MfStatus {
    if out.is_null() {
        set_error("null out-parameter");
        return MfStatus::MF_STATUS_NULL_POINTER;
    }
    let spec = match read_str(spec) {
        Ok(s) => s,
        Err(st) => return st,
    };
    guarded(|| match parse_group(spec) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(MfGroup(g)));
            MfStatus::MF_STATUS_OK
        }
        Err(e) => fail(&e),
    })
}

/// Group order, or 0 on a null handle.
///
/// # Safety
/// `group` must be null or a pointer from `mf_group_new`.
#[no_mangle]
pub unsafe extern "C" fn mf_group_order(group: *const MfGroup) -> u64 {
    if group.is_null() {
        return 0;
    }
    (*group).0.order() as u64
}

/// # Safety
/// `group` must be null or a pointer from `mf_group_new`, freed once.
#[no_mangle]
pub unsafe extern "C" fn mf_group_free(group: *mut MfGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Dimension and commutativity of the Hecke algebra of (G, H, eta).
///
/// # Safety
/// All spec strings must be valid NUL-terminated strings; `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn mf_hecke_info(
    group_spec: *const c_char,
    subgroup_spec: *const c_char,
    character_spec: *const c_char,
    field_spec: *const c_char,
    out: *mut MfHeckeInfo,
) -> MfStatus {
    if out.is_null() {
        set_error("null out-parameter");
        return MfStatus::MF_STATUS_NULL_POINTER;
    }
    let gs = match read_str(group_spec) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let hs = match read_str(subgroup_spec) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let cs = match read_str(character_spec) {
        Ok(s) => s,
        Err(st) => return st,
    };
    let fs = match read_str(field_spec) {
        Ok(s) => s,
        Err(st) => return st,
    };
    guarded(|| {
        let run = || -> Result<MfHeckeInfo, Error> {
            let g = parse_group(gs)?;
            let h = parse_subgroup(&g, hs)?;
            let ctx = FieldCtx::parse(fs)?;
            let eta = parse_character(cs)?.evaluate(&h, &ctx)?;
            let hecke = hecke_algebra_convolution(&g, &h, &eta)?;
            Ok(MfHeckeInfo {
                dim: hecke.dim() as u64,
                commutative: hecke.is_commutative(),
                double_cosets: hecke.space().double_cosets().representatives.len() as u64,
            })
        };
        match run() {
            Ok(info) => {
                *out = info;
                MfStatus::MF_STATUS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

fn report_to_cstring(report: &MachineReport) -> *mut c_char {
    CString::new(report.to_json()).unwrap().into_raw()
}

/// Runs one scenario (TOML text) and returns the machine report as JSON.
///
/// # Safety
/// `toml_text` must be a valid NUL-terminated string; `out_json` non-null.
#[no_mangle]
pub unsafe extern "C" fn mf_run_scenario_toml(
    toml_text: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> MfStatus {
    if out_json.is_null() {
        set_error("null out-parameter");
        return MfStatus::MF_STATUS_NULL_POINTER;
    }
    let text = match read_str(toml_text) {
        Ok(t) => t,
        Err(st) => return st,
    };
    guarded(|| {
        let sc = match Scenario::from_toml(text) {
            Ok(sc) => sc,
            Err(e) => return fail(&e),
        };
        let cfg = RunConfig { seed, ..RunConfig::default() };
        let rep = run_scenario(&sc, &cfg);
        let machine = MachineReport::new("run", seed, vec![rep]);
        *out_json = report_to_cstring(&machine);
        MfStatus::MF_STATUS_OK
    })
}

/// Runs a built-in suite and returns the machine report as JSON.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out_json` non-null.
#[no_mangle]
pub unsafe extern "C" fn mf_run_suite(
    name: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> MfStatus {
    if out_json.is_null() {
        set_error("null out-parameter");
        return MfStatus::MF_STATUS_NULL_POINTER;
    }
    let name = match read_str(name) {
        Ok(n) => n,
        Err(st) => return st,
    };
    guarded(|| {
        let cfg = RunConfig { seed, ..RunConfig::default() };
        match run_suite(name, &cfg) {
            Ok(machine) => {
                *out_json = report_to_cstring(&machine);
                MfStatus::MF_STATUS_OK
            }
            Err(e) => fail(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn field_and_group_handles() {
        unsafe {
            let mut f: *mut MfField = std::ptr::null_mut();
            assert_eq!(mf_field_new(cstr("gf(3,2)").as_ptr(), &mut f), MfStatus::MF_STATUS_OK);
            assert_eq!(mf_field_order(f), 9);
            mf_field_free(f);

            let mut g: *mut MfGroup = std::ptr::null_mut();
            assert_eq!(mf_group_new(cstr("sym(4)").as_ptr(), &mut g), MfStatus::MF_STATUS_OK);
            assert_eq!(mf_group_order(g), 24);
            mf_group_free(g);

            let mut bad: *mut MfGroup = std::ptr::null_mut();
            assert_eq!(
                mf_group_new(cstr("nonsense(1)").as_ptr(), &mut bad),
                MfStatus::MF_STATUS_PARSE_ERROR
            );
            let msg = CStr::from_ptr(mf_last_error_message());
            assert!(msg.to_str().unwrap().contains("nonsense"));
        }
    }

    #[test]
    fn hecke_info_matches_the_library() {
        unsafe {
            let mut info = MfHeckeInfo { dim: 0, commutative: false, double_cosets: 0 };
            let st = mf_hecke_info(
                cstr("sym(3)").as_ptr(),
                cstr("young(2)").as_ptr(),
                cstr("trivial").as_ptr(),
                cstr("gf(5,1)").as_ptr(),
                &mut info,
            );
            assert_eq!(st, MfStatus::MF_STATUS_OK);
            assert_eq!(info.dim, 2);
            assert!(info.commutative);
            assert_eq!(info.double_cosets, 2);
        }
    }

    #[test]
    fn scenario_and_suite_json_round_trip() {
        unsafe {
            let toml = cstr(
                "id = \"capi-smoke\"\npipeline = \"gelfand_pair\"\nfield = \"gf(2,1)\"\ngroup = \"sym(3)\"\nsubgroup = \"young(2)\"\n",
            );
            let mut json: *mut c_char = std::ptr::null_mut();
            assert_eq!(mf_run_scenario_toml(toml.as_ptr(), 42, &mut json), MfStatus::MF_STATUS_OK);
            let text = CStr::from_ptr(json).to_str().unwrap().to_string();
            mf_string_free(json);
            assert!(text.contains("\"verdict\": \"PASS\""));
            assert!(text.contains("capi-smoke"));

            let mut json2: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                mf_run_suite(cstr("properties").as_ptr(), 42, &mut json2),
                MfStatus::MF_STATUS_OK
            );
            let text2 = CStr::from_ptr(json2).to_str().unwrap().to_string();
            mf_string_free(json2);
            assert!(text2.contains("prop-wedderburn"));
        }
    }

    #[test]
    fn null_arguments_are_rejected() {
        unsafe {
            let mut f: *mut MfField = std::ptr::null_mut();
            assert_eq!(mf_field_new(std::ptr::null(), &mut f), MfStatus::MF_STATUS_NULL_POINTER);
            assert_eq!(
                mf_field_new(cstr("gf(2,1)").as_ptr(), std::ptr::null_mut()),
                MfStatus::MF_STATUS_NULL_POINTER
            );
            assert_eq!(mf_field_order(std::ptr::null()), 0);
            mf_field_free(std::ptr::null_mut());
            mf_string_free(std::ptr::null_mut());
        }
    }

    #[test]
    fn version_is_exposed() {
        unsafe {
            let v = CStr::from_ptr(mf_version()).to_str().unwrap();
            assert_eq!(v, env!("CARGO_PKG_VERSION"));
        }
    }
}
