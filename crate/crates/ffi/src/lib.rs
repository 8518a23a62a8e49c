//! C ABI over `premon`.
//!
//! Every fallible function returns a [`PremonStatus`]. On anything other than
//! `PREMON_STATUS_OK` a message is available from [`premon_last_error`] on the
//! same thread. Strings handed out through out-pointers belong to the caller
//! and are released with [`premon_string_free`]; instance handles are
//! released with [`premon_instance_free`]. Budgets are passed by pointer, and
//! a null budget means the library defaults.
//!
//! Instances and elements use the same JSON and text syntax as the `premon`
//! command line, e.g. `{"family":"puiseux","a":2,"b":3}` with element `4/3`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use premon::budget::{Degree, Height, SearchBudget, Tri};
use premon::cli::{self, Instance, InstanceSpec};
use premon::finite::enumerate_monoids;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PremonStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed instance or element, or a question that does not apply
    /// (for example a quark test on a unit).
    InvalidInput = 3,
    InvalidBudget = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PremonTri {
    False = 0,
    True = 1,
    Unknown = 2,
}

impl From<Tri> for PremonTri {
    fn from(t: Tri) -> Self {
        match t {
            Tri::False => PremonTri::False,
            Tri::True => PremonTri::True,
            Tri::Unknown => PremonTri::Unknown,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PremonHeightKind {
    Exact = 0,
    /// `value` is a lower bound; the search was cut off.
    AtLeast = 1,
    /// An infinite descending chain is certified; `value` is the checked depth.
    Infinite = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PremonHeight {
    pub kind: PremonHeightKind,
    pub value: usize,
}

/// Search limits; every field must be positive.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PremonBudget {
    pub chain_depth: usize,
    pub factor_cap: usize,
    pub node_cap: usize,
    pub exponent_cap: usize,
    pub rewrite_radius: usize,
}

impl From<SearchBudget> for PremonBudget {
    fn from(b: SearchBudget) -> Self {
        PremonBudget {
            chain_depth: b.chain_depth,
            factor_cap: b.factor_cap,
            node_cap: b.node_cap,
            exponent_cap: b.exponent_cap,
            rewrite_radius: b.rewrite_radius,
        }
    }
}

/// Opaque handle to a parsed instance.
pub struct PremonInstance {
    inner: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (PremonStatus, String);

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PremonStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PremonStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            PremonStatus::Panic
        }
    }
}

fn input(e: impl std::fmt::Display) -> Failure {
    (PremonStatus::InvalidInput, e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((PremonStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (PremonStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn read_budget(p: *const PremonBudget) -> Result<SearchBudget, Failure> {
    let Some(b) = p.as_ref() else {
        return Ok(SearchBudget::default());
    };
    SearchBudget::default()
        .with_chain_depth(b.chain_depth)
        .with_factor_cap(b.factor_cap)
        .with_node_cap(b.node_cap)
        .with_exponent_cap(b.exponent_cap)
        .with_rewrite_radius(b.rewrite_radius)
        .validate()
        .map_err(|e| (PremonStatus::InvalidBudget, e.to_string()))
}

unsafe fn read_instance<'a>(p: *const PremonInstance) -> Result<&'a Instance, Failure> {
    p.as_ref()
        .map(|i| &i.inner)
        .ok_or((PremonStatus::NullPointer, "instance is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err((PremonStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(input)?;
    let c = CString::new(text).map_err(input)?;
    write_out(out, c.into_raw())
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn premon_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The last error message on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn premon_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn premon_budget_default() -> PremonBudget {
    SearchBudget::default().into()
}

/// Parses an instance from JSON.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn premon_instance_new(spec_json: *const c_char, out: *mut *mut PremonInstance) -> PremonStatus {
    guard(|| {
        let text = read_str(spec_json, "instance")?;
        let spec: InstanceSpec = serde_json::from_str(text).map_err(|e| input(format!("invalid instance: {e}")))?;
        let inner = spec.build().map_err(input)?;
        write_out(out, Box::into_raw(Box::new(PremonInstance { inner })))
    })
}

/// # Safety
/// `instance` must come from [`premon_instance_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn premon_instance_free(instance: *mut PremonInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Full classification of an element as a JSON object.
///
/// # Safety
/// Pointers must be valid; `budget` may be null.
#[no_mangle]
pub unsafe extern "C" fn premon_classify(
    instance: *const PremonInstance,
    element: *const c_char,
    budget: *const PremonBudget,
    out_json: *mut *mut c_char,
) -> PremonStatus {
    guard(|| {
        let inst = read_instance(instance)?;
        let x = inst.parse_element(read_str(element, "element")?).map_err(input)?;
        let c = cli::classify(inst, &x, &read_budget(budget)?).map_err(input)?;
        write_json(out_json, &c)
    })
}

/// # Safety
/// Pointers must be valid; `budget` may be null.
#[no_mangle]
pub unsafe extern "C" fn premon_is_quark(
    instance: *const PremonInstance,
    element: *const c_char,
    budget: *const PremonBudget,
    out: *mut PremonTri,
) -> PremonStatus {
    guard(|| {
        let inst = read_instance(instance)?;
        let x = inst.parse_element(read_str(element, "element")?).map_err(input)?;
        let t = inst.is_quark(&x, &read_budget(budget)?).map_err(input)?;
        write_out(out, t.into())
    })
}

/// Degree-`degree` irreducibility; `degree = 0` means unbounded.
///
/// # Safety
/// Pointers must be valid; `budget` may be null.
#[no_mangle]
pub unsafe extern "C" fn premon_is_irreducible(
    instance: *const PremonInstance,
    element: *const c_char,
    degree: usize,
    budget: *const PremonBudget,
    out: *mut PremonTri,
) -> PremonStatus {
    guard(|| {
        let s = match degree {
            0 => Degree::Infinite,
            1 => return Err(input("degree must be 0 (unbounded) or at least 2")),
            k => Degree::Finite(k),
        };
        let inst = read_instance(instance)?;
        let x = inst.parse_element(read_str(element, "element")?).map_err(input)?;
        let t = inst.is_irreducible(&x, s, &read_budget(budget)?).map_err(input)?;
        write_out(out, t.into())
    })
}

/// # Safety
/// Pointers must be valid; `budget` may be null.
#[no_mangle]
pub unsafe extern "C" fn premon_height(
    instance: *const PremonInstance,
    element: *const c_char,
    budget: *const PremonBudget,
    out: *mut PremonHeight,
) -> PremonStatus {
    guard(|| {
        let inst = read_instance(instance)?;
        let x = inst.parse_element(read_str(element, "element")?).map_err(input)?;
        let h = match inst.height(&x, &read_budget(budget)?).map_err(input)? {
            Height::Exact(n) => PremonHeight { kind: PremonHeightKind::Exact, value: n },
            Height::AtLeast(n) => PremonHeight { kind: PremonHeightKind::AtLeast, value: n },
            Height::Infinite { witnessed_depth } => PremonHeight {
                kind: PremonHeightKind::Infinite,
                value: witnessed_depth,
            },
        };
        write_out(out, h)
    })
}

/// A certified descending chain of `length` elements as JSON. `element` may
/// be null to start from the family's own chain.
///
/// # Safety
/// Pointers must be valid; `element` and `budget` may be null.
#[no_mangle]
pub unsafe extern "C" fn premon_chain(
    instance: *const PremonInstance,
    element: *const c_char,
    length: usize,
    budget: *const PremonBudget,
    out_json: *mut *mut c_char,
) -> PremonStatus {
    guard(|| {
        let inst = read_instance(instance)?;
        let element = if element.is_null() { None } else { Some(read_str(element, "element")?) };
        let c = cli::chain(inst, element, None, length, &read_budget(budget)?).map_err(input)?;
        write_json(out_json, &c)
    })
}

/// Number of monoids of order `n` up to isomorphism (`1 ≤ n ≤ 4`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn premon_monoid_count(n: usize, out: *mut usize) -> PremonStatus {
    guard(|| {
        let all = enumerate_monoids(n).map_err(input)?;
        write_out(out, all.len())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn premon_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
