//! C ABI for the bmcp solver.
//!
//! Every fallible call returns a [`BmcpStatus`]. On failure the message is
//! available from [`bmcp_last_error`] on the same thread until the next
//! failing call. Item indices are 0-based, like the Rust API.
//!
//! Objects handed out through `out` pointers are owned by the caller and
//! must be released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::time::Duration;

use bmcp::driver::RunResult;
use bmcp::format::read_instance_file;
use bmcp::stats::PairedSample;
use bmcp::{
    exact_optimum, export_lp, generate_instance, parse_instance, solve, wilcoxon_signed_rank,
    write_instance, Budget, Error, GeneratorSpec, Instance, PerturbationPolicy, SolverConfig,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BmcpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Io = 4,
    Config = 5,
    Infeasible = 6,
    InvalidInput = 7,
    Panic = 8,
}

/// Opaque problem instance.
pub struct BmcpInstance(Instance);

/// Opaque outcome of one solver run.
pub struct BmcpRunResult(RunResult);

/// Solver settings. Obtain defaults from [`bmcp_solver_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BmcpSolverConfig {
    /// Wall-clock budget in seconds; ignored when `rounds` is nonzero.
    pub time_limit_seconds: f64,
    /// Number of tabu phases; 0 selects the time budget.
    pub rounds: u64,
    pub reward_factor: f64,
    pub penalty_factor: f64,
    /// 0 keeps the default depth rule.
    pub depth: u64,
    /// 0 keeps the default tenure rule.
    pub tenure: u64,
    /// Use the random perturbation instead of the learned one.
    pub random_perturbation: bool,
    pub carry_probability: bool,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BmcpWilcoxon {
    pub w_plus: f64,
    pub n: usize,
    pub p_value: f64,
    pub exact: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(BmcpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => BmcpStatus::Parse,
            Error::Io(_) => BmcpStatus::Io,
            Error::Config(_) | Error::TooLarge(_) => BmcpStatus::Config,
            Error::Infeasible { .. } => BmcpStatus::Infeasible,
            _ => BmcpStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(BmcpStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BmcpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BmcpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
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
            BmcpStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(BmcpStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn instance_arg<'a>(p: *const BmcpInstance) -> Result<&'a Instance, Failure> {
    p.as_ref().map(|i| &i.0).ok_or_else(|| null("instance"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|e| Failure(BmcpStatus::InvalidInput, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bmcp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses the text instance format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmcp_instance_parse(
    text: *const c_char,
    out: *mut *mut BmcpInstance,
) -> BmcpStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        put(out, BmcpInstance(parse_instance(text)?))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmcp_instance_load(
    path: *const c_char,
    out: *mut *mut BmcpInstance,
) -> BmcpStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        put(out, BmcpInstance(read_instance_file(Path::new(path))?))
    })
}

/// Random instance with weights and profits uniform in `[1, 100]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmcp_instance_generate(
    item_count: usize,
    element_count: usize,
    density: f64,
    capacity: u64,
    seed: u64,
    out: *mut *mut BmcpInstance,
) -> BmcpStatus {
    guard(|| {
        let spec = GeneratorSpec::new(item_count, element_count, density, capacity, seed);
        put(out, BmcpInstance(generate_instance(&spec)?))
    })
}

/// # Safety
/// `inst` must be null or come from this library and not be freed yet.
#[no_mangle]
pub unsafe extern "C" fn bmcp_instance_free(inst: *mut BmcpInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Returns 0 for a null instance.
///
/// # Safety
/// `inst` must be null or a live instance.
#[no_mangle]
pub unsafe extern "C" fn bmcp_instance_item_count(inst: *const BmcpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.item_count())
}

/// # Safety
/// `inst` must be null or a live instance.
#[no_mangle]
pub unsafe extern "C" fn bmcp_instance_element_count(inst: *const BmcpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.element_count())
}

/// # Safety
/// `inst` must be null or a live instance.
#[no_mangle]
pub unsafe extern "C" fn bmcp_instance_capacity(inst: *const BmcpInstance) -> u64 {
    inst.as_ref().map_or(0, |i| i.0.capacity())
}

/// Canonical text form. Release with [`bmcp_string_free`].
///
/// # Safety
/// `inst` must be a live instance; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmcp_instance_to_string(
    inst: *const BmcpInstance,
    out: *mut *mut c_char,
) -> BmcpStatus {
    guard(|| put_string(out, write_instance(instance_arg(inst)?)))
}

/// LP model text. Release with [`bmcp_string_free`].
///
/// # Safety
/// `inst` must be a live instance; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmcp_export_lp(
    inst: *const BmcpInstance,
    out: *mut *mut c_char,
) -> BmcpStatus {
    guard(|| put_string(out, export_lp(instance_arg(inst)?)))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn bmcp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn bmcp_solver_config_default() -> BmcpSolverConfig {
    let d = SolverConfig::default();
    let time_limit_seconds = match d.budget {
        Budget::Time(t) => t.as_secs_f64(),
        Budget::Rounds(_) => 0.0,
    };
    BmcpSolverConfig {
        time_limit_seconds,
        rounds: 0,
        reward_factor: d.reward_factor,
        penalty_factor: d.penalty_factor,
        depth: 0,
        tenure: 0,
        random_perturbation: d.perturbation == PerturbationPolicy::Random,
        carry_probability: d.carry_probability,
        seed: d.seed,
    }
}

fn to_config(c: &BmcpSolverConfig) -> Result<SolverConfig, Failure> {
    let budget = if c.rounds > 0 {
        Budget::Rounds(c.rounds)
    } else {
        let t = Duration::try_from_secs_f64(c.time_limit_seconds).map_err(|_| {
            Failure(BmcpStatus::Config, format!("bad time limit {}", c.time_limit_seconds))
        })?;
        Budget::Time(t)
    };
    Ok(SolverConfig {
        budget,
        reward_factor: c.reward_factor,
        penalty_factor: c.penalty_factor,
        depth_override: (c.depth > 0).then_some(c.depth),
        tenure_override: (c.tenure > 0).then_some(c.tenure),
        perturbation: if c.random_perturbation {
            PerturbationPolicy::Random
        } else {
            PerturbationPolicy::Probability
        },
        carry_probability: c.carry_probability,
        seed: c.seed,
    })
}

/// One solver run. A null `config` uses the defaults (600 s budget).
///
/// # Safety
/// `inst` must be a live instance, `config` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bmcp_solve(
    inst: *const BmcpInstance,
    config: *const BmcpSolverConfig,
    out: *mut *mut BmcpRunResult,
) -> BmcpStatus {
    guard(|| {
        let inst = instance_arg(inst)?;
        let cfg = match config.as_ref() {
            Some(c) => to_config(c)?,
            None => SolverConfig::default(),
        };
        put(out, BmcpRunResult(solve(inst, &cfg)?))
    })
}

/// # Safety
/// `r` must be null or a live result.
#[no_mangle]
pub unsafe extern "C" fn bmcp_run_result_free(r: *mut BmcpRunResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be null or a live result.
#[no_mangle]
pub unsafe extern "C" fn bmcp_run_result_objective(r: *const BmcpRunResult) -> u64 {
    r.as_ref().map_or(0, |r| r.0.best_objective)
}

/// # Safety
/// `r` must be null or a live result.
#[no_mangle]
pub unsafe extern "C" fn bmcp_run_result_weight(r: *const BmcpRunResult) -> u64 {
    r.as_ref().map_or(0, |r| r.0.best_weight)
}

/// # Safety
/// `r` must be null or a live result.
#[no_mangle]
pub unsafe extern "C" fn bmcp_run_result_rounds(r: *const BmcpRunResult) -> u64 {
    r.as_ref().map_or(0, |r| r.0.rounds)
}

/// # Safety
/// `r` must be null or a live result.
#[no_mangle]
pub unsafe extern "C" fn bmcp_run_result_time_to_best(r: *const BmcpRunResult) -> f64 {
    r.as_ref().map_or(0.0, |r| r.0.time_to_best.as_secs_f64())
}

/// # Safety
/// `r` must be null or a live result.
#[no_mangle]
pub unsafe extern "C" fn bmcp_run_result_selected_count(r: *const BmcpRunResult) -> usize {
    r.as_ref().map_or(0, |r| r.0.best_selection.selected_count())
}

/// Copies the selected items, ascending, into `buf`. Fails with
/// `InvalidInput` when `len` is smaller than the selected count.
///
/// # Safety
/// `r` must be a live result; `buf` must hold `len` writable elements.
#[no_mangle]
pub unsafe extern "C" fn bmcp_run_result_selected_items(
    r: *const BmcpRunResult,
    buf: *mut usize,
    len: usize,
) -> BmcpStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        let items = r.0.best_selection.items();
        if items.len() > len {
            return Err(Failure(
                BmcpStatus::InvalidInput,
                format!("buffer holds {len} items, {} needed", items.len()),
            ));
        }
        if !items.is_empty() {
            if buf.is_null() {
                return Err(null("buffer"));
            }
            std::slice::from_raw_parts_mut(buf, items.len()).copy_from_slice(&items);
        }
        Ok(())
    })
}

/// Proven optimum by exhaustive enumeration (small instances only).
///
/// # Safety
/// `inst` must be a live instance; `objective` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmcp_exact_optimum(
    inst: *const BmcpInstance,
    objective: *mut u64,
) -> BmcpStatus {
    guard(|| {
        let inst = instance_arg(inst)?;
        if objective.is_null() {
            return Err(null("objective"));
        }
        *objective = exact_optimum(inst)?.0;
        Ok(())
    })
}

/// Two-sided Wilcoxon signed-rank test on `len` pairs `(a[i], b[i])`.
///
/// # Safety
/// `a` and `b` must hold `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bmcp_wilcoxon(
    a: *const f64,
    b: *const f64,
    len: usize,
    out: *mut BmcpWilcoxon,
) -> BmcpStatus {
    guard(|| {
        if a.is_null() || b.is_null() {
            return Err(null("sample"));
        }
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let a = std::slice::from_raw_parts(a, len);
        let b = std::slice::from_raw_parts(b, len);
        let r = wilcoxon_signed_rank(&PairedSample::from_columns(a, b)?);
        *out = BmcpWilcoxon { w_plus: r.w_plus, n: r.n, p_value: r.p_value, exact: r.exact };
        Ok(())
    })
}
