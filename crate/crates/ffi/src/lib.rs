//! C ABI for `bdhilb`.
//!
//! Groups and charts live behind opaque handles created by `*_new` and
//! released by `*_free`. Every fallible call returns a [`BdhStatus`] and
//! writes its result through an out pointer; results are JSON strings owned
//! by the caller and released with [`bdh_string_free`]. The message of the
//! last error on the calling thread is available from [`bdh_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bdhilb::charts::{chart_for, Chart};
use bdhilb::cli::{execute, Cli, Command, Format, GlobalOpts};
use bdhilb::ggraph::{enumerate_ggraphs, find_ggraph};
use bdhilb::group::{make_group, GroupParams};
use bdhilb::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BdhStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// Malformed input such as a decimal parameter.
    Parse = 3,
    /// Input violating a precondition.
    Invalid = 4,
    /// A valid group outside the supported family.
    Unsupported = 5,
    /// A computed object failed one of its checks.
    Verification = 6,
    /// An internal error; the library state is unchanged.
    Internal = 7,
}

/// Opaque handle to a validated group `BD_2n(a)`.
pub struct BdhGroup {
    params: GroupParams,
}

/// Opaque handle to a solved chart of one G-graph.
pub struct BdhChart {
    group: GroupParams,
    key: String,
    chart: Chart,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> BdhStatus {
    match e {
        Error::Parse(_) => BdhStatus::Parse,
        Error::Invalid(_) => BdhStatus::Invalid,
        Error::Unsupported(_) => BdhStatus::Unsupported,
        Error::Verification(_) => BdhStatus::Verification,
    }
}

/// Runs `f`, turning errors and panics into a status and the last error.
fn guard(f: impl FnOnce() -> Result<(), (BdhStatus, String)>) -> BdhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BdhStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            BdhStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (BdhStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (BdhStatus, String)> {
    if s.is_null() {
        return Err((BdhStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (BdhStatus::Utf8, "string argument is not UTF-8".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (BdhStatus, String)> {
    let c = CString::new(s).map_err(|_| (BdhStatus::Internal, "output contains a null byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_out<T>(out: *mut *mut T) -> Result<(), (BdhStatus, String)> {
    if out.is_null() {
        return Err((BdhStatus::NullPointer, "null out pointer".into()));
    }
    Ok(())
}

fn group_ref<'a>(g: *const BdhGroup) -> Result<&'a BdhGroup, (BdhStatus, String)> {
    // SAFETY: the caller passes a handle from `bdh_group_new` or null.
    unsafe { g.as_ref() }.ok_or((BdhStatus::NullPointer, "null group handle".into()))
}

fn chart_ref<'a>(c: *const BdhChart) -> Result<&'a BdhChart, (BdhStatus, String)> {
    // SAFETY: the caller passes a handle from `bdh_chart_new` or null.
    unsafe { c.as_ref() }.ok_or((BdhStatus::NullPointer, "null chart handle".into()))
}

fn opts(seed: u64, samples: usize) -> GlobalOpts {
    GlobalOpts { format: Format::Json, max_degree: None, seed, samples }
}

/// Runs a command and writes its JSON; a failed check gives `Verification`
/// with the JSON still written.
unsafe fn run_json(command: Command, global: GlobalOpts, out: *mut *mut c_char) -> Result<(), (BdhStatus, String)> {
    let output = execute(&Cli { global, command }).map_err(lib_err)?;
    let text = serde_json::to_string(&output.json).map_err(|e| (BdhStatus::Internal, e.to_string()))?;
    write_string(out, text)?;
    if output.verified {
        Ok(())
    } else {
        Err((BdhStatus::Verification, "one or more checks failed".into()))
    }
}

/// Message of the last error on this thread; empty after a success. The
/// pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn bdh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bdh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Validates `BD_2n(a)` and creates a group handle.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_group_new(two_n: i64, a: i64, out: *mut *mut BdhGroup) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let params = make_group(two_n, a).map_err(lib_err)?;
        params.require_family().map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BdhGroup { params }));
        Ok(())
    })
}

/// Releases a group handle. Null is ignored.
///
/// # Safety
/// `g` must come from [`bdh_group_new`] and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bdh_group_free(g: *mut BdhGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// `2n` of the group.
///
/// # Safety
/// `g` must be a live group handle or null (which gives 0).
#[no_mangle]
pub unsafe extern "C" fn bdh_group_two_n(g: *const BdhGroup) -> i64 {
    g.as_ref().map_or(0, |g| g.params.two_n)
}

/// `a` of the group.
///
/// # Safety
/// `g` must be a live group handle or null (which gives 0).
#[no_mangle]
pub unsafe extern "C" fn bdh_group_a(g: *const BdhGroup) -> i64 {
    g.as_ref().map_or(0, |g| g.params.a)
}

/// Group invariants and irreducible representations as JSON.
///
/// # Safety
/// `g` must be a live group handle and `out` a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_group_json(g: *const BdhGroup, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let p = group_ref(g)?.params;
        run_json(Command::Group { two_n: p.two_n, a: p.a }, opts(0, 0), out)
    })
}

/// All G-graphs with ideals and multiplicities as JSON.
///
/// # Safety
/// `g` must be a live group handle and `out` a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_ggraphs_json(g: *const BdhGroup, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let p = group_ref(g)?.params;
        run_json(Command::Ggraphs { two_n: p.two_n, a: p.a }, opts(0, 0), out)
    })
}

/// The McKay quiver with relations as JSON.
///
/// # Safety
/// `g` must be a live group handle and `out` a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_quiver_json(g: *const BdhGroup, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let p = group_ref(g)?.params;
        run_json(Command::Quiver { two_n: p.two_n, a: p.a, dot: false }, opts(0, 0), out)
    })
}

/// The McKay quiver in Graphviz DOT.
///
/// # Safety
/// `g` must be a live group handle and `out` a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_quiver_dot(g: *const BdhGroup, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let p = group_ref(g)?.params;
        let qd = bdhilb::quiver::dihedral_mckay(&p).map_err(lib_err)?;
        write_string(out, bdhilb::quiver::export_dot(&qd))
    })
}

/// Chart records of every G-graph, or of the one named by `graph` when it
/// is not null, as a JSON list.
///
/// # Safety
/// `g` must be a live group handle, `graph` null or a C string, and `out`
/// a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_charts_json(g: *const BdhGroup, graph: *const c_char, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let p = group_ref(g)?.params;
        let graph = if graph.is_null() { None } else { Some(read_str(graph)?.to_string()) };
        run_json(Command::Charts { two_n: p.two_n, a: p.a, graph }, opts(0, 0), out)
    })
}

/// Runs every check for the group and writes the report. Returns
/// `Verification` (with the report written) when a check fails.
///
/// # Safety
/// `g` must be a live group handle and `out` a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_verify_json(g: *const BdhGroup, seed: u64, samples: usize, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let p = group_ref(g)?.params;
        run_json(Command::Verify { two_n: p.two_n, a: p.a }, opts(seed, samples), out)
    })
}

/// Creates the chart of the G-graph named by `key` (id, index or kind label).
///
/// # Safety
/// `g` must be a live group handle, `key` a C string and `out` a valid
/// handle slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_chart_new(g: *const BdhGroup, key: *const c_char, out: *mut *mut BdhChart) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let group = group_ref(g)?.params;
        let key = read_str(key)?;
        let graphs = enumerate_ggraphs(&group).map_err(lib_err)?;
        let gg = find_ggraph(&graphs, key).map_err(lib_err)?;
        let chart = chart_for(gg, &group).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BdhChart { group, key: gg.id.clone(), chart }));
        Ok(())
    })
}

/// Releases a chart handle. Null is ignored.
///
/// # Safety
/// `c` must come from [`bdh_chart_new`] and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bdh_chart_free(c: *mut BdhChart) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of free parameters of the chart, or 0 for null.
///
/// # Safety
/// `c` must be a live chart handle or null.
#[no_mangle]
pub unsafe extern "C" fn bdh_chart_num_params(c: *const BdhChart) -> usize {
    c.as_ref().map_or(0, |c| c.chart.free_params.len())
}

/// The chart record as JSON.
///
/// # Safety
/// `c` must be a live chart handle and `out` a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_chart_json(c: *const BdhChart, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let c = chart_ref(c)?;
        let text = serde_json::to_string(&c.chart).map_err(|e| (BdhStatus::Internal, e.to_string()))?;
        write_string(out, text)
    })
}

/// The G-cluster ideal at the point `params` (comma-separated exact values
/// in the order of the free parameters) with its verification report.
/// Returns `Invalid` for points off the chart and `Verification` (with the
/// report written) when the cluster checks fail.
///
/// # Safety
/// `c` must be a live chart handle, `params` a C string and `out` a valid
/// string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_chart_cluster_json(c: *const BdhChart, params: *const c_char, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        let c = chart_ref(c)?;
        let params = read_str(params)?.to_string();
        let command = Command::Cluster { two_n: c.group.two_n, a: c.group.a, chart: c.key.clone(), params };
        run_json(command, opts(0, 0), out)
    })
}

/// Charts of the cyclic quotient `1/m(1,a)` as a JSON list.
///
/// # Safety
/// `out` must be a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_cyclic_charts_json(m: i64, a: i64, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        run_json(Command::Cyclic { m, a }, opts(0, 0), out)
    })
}

/// Supported groups with `2n <= max` as a JSON list.
///
/// # Safety
/// `out` must be a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn bdh_enumerate_json(max: i64, out: *mut *mut c_char) -> BdhStatus {
    guard(|| {
        check_out(out)?;
        run_json(Command::Enumerate { max }, opts(0, 0), out)
    })
}
