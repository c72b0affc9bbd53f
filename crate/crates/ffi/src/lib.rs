//! C ABI over the `recolor` library.
//!
//! Graphs and solver runs are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a
//! `RecolorStatus`; on failure `recolor_last_error_message` describes the
//! error for the calling thread. Colors crossing the boundary are 1-based and
//! 0 marks an uncolored vertex.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;
use std::slice;
use std::time::Duration;

use recolor::constructive::dsatur;
use recolor::graph::{parse_dimacs, Graph};
use recolor::{
    bench, penalty_complete, recycle_complete, recycle_partial, solve_vcol, CompleteColoring, Engine, Error,
    InitGenerator, RecolorRule, RecycleConfig, RunRecord, SolveConfig, TenureScheme,
};

/// Opaque graph handle.
pub struct RecolorGraph(Graph);

/// Opaque result of `recolor_solve`.
pub struct RecolorRun(RunRecord);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecolorStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    IoError = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecolorEngine {
    Tabucol = 0,
    Partialcol = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecolorTenure {
    Dyn = 0,
    Foo = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecolorInit {
    RecycleStar = 0,
    /// Dissolve `recycle_t` random classes.
    RecycleT = 1,
    Greedy = 2,
    Random = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecolorRecolor {
    Random = 0,
    LeastSelection = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecolorSolveOptions {
    pub engine: RecolorEngine,
    pub tenure: RecolorTenure,
    pub init: RecolorInit,
    pub recycle_t: usize,
    pub recolor: RecolorRecolor,
    /// Wall-clock budget for the whole run, in seconds.
    pub time_limit_s: f64,
    /// Iteration cap per k-level; 0 means none.
    pub iter_cap: u64,
    pub seed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: RecolorStatus,
    message: String,
}

impl Failure {
    fn new(status: RecolorStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }

    fn null(what: &str) -> Self {
        Failure::new(RecolorStatus::NullPointer, format!("{what} is null"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => RecolorStatus::ParseError,
            Error::File { .. } | Error::Io(_) | Error::Csv(_) | Error::Json(_) => RecolorStatus::IoError,
            _ => RecolorStatus::InvalidArgument,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn call(f: impl FnOnce() -> Result<(), Failure>) -> RecolorStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RecolorStatus::Ok,
        Ok(Err(failure)) => {
            set_last_error(&failure.message);
            failure.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("panic: {msg}"));
            RecolorStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const RecolorGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| Failure::null("graph"))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::new(RecolorStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn slice_out<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(Failure::null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn write_out<T>(p: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    p.write(value);
    Ok(())
}

unsafe fn coloring_arg(g: &Graph, colors: *const u32, k: usize) -> Result<CompleteColoring, Failure> {
    let colors = slice_arg(colors, g.n(), "colors")?;
    Ok(CompleteColoring::from_one_based(k, colors)?)
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn recolor_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses DIMACS text (`p edge n m` / `e u v`).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn recolor_graph_from_dimacs(text: *const c_char, out: *mut *mut RecolorGraph) -> RecolorStatus {
    call(|| {
        let g = parse_dimacs(str_arg(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(RecolorGraph(g))), "out")
    })
}

/// Loads a DIMACS file, or a Carter `.stu` student file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn recolor_graph_from_file(path: *const c_char, out: *mut *mut RecolorGraph) -> RecolorStatus {
    call(|| {
        let g = bench::load_instance(str_arg(path, "path")?.as_ref())?;
        write_out(out, Box::into_raw(Box::new(RecolorGraph(g))), "out")
    })
}

/// Builds a graph on `n` vertices from `m` edges given as `2 * m` 0-based
/// endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` values and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn recolor_graph_from_edges(
    n: usize,
    edges: *const u32,
    m: usize,
    out: *mut *mut RecolorGraph,
) -> RecolorStatus {
    call(|| {
        let len = m
            .checked_mul(2)
            .ok_or_else(|| Failure::new(RecolorStatus::InvalidArgument, "edge count overflows"))?;
        let flat = slice_arg(edges, len, "edges")?;
        let pairs = flat.chunks_exact(2).map(|e| (e[0] as usize, e[1] as usize));
        let g = Graph::from_edges(n, pairs)?;
        write_out(out, Box::into_raw(Box::new(RecolorGraph(g))), "out")
    })
}

/// # Safety
/// `g` must come from a `recolor_graph_from_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn recolor_graph_free(g: *mut RecolorGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn recolor_graph_vertex_count(g: *const RecolorGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a live graph handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn recolor_graph_edge_count(g: *const RecolorGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// DSATUR coloring: writes `n` colors to `colors_out` and the color count to `k_out`.
///
/// # Safety
/// `colors_out` must have room for `n` values; `k_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn recolor_dsatur(
    g: *const RecolorGraph,
    seed: u64,
    colors_out: *mut u32,
    k_out: *mut usize,
) -> RecolorStatus {
    call(|| {
        let g = graph_ref(g)?;
        let out = slice_out(colors_out, g.n(), "colors_out")?;
        let c = dsatur(g, &mut recolor::rng::seeded(seed));
        out.copy_from_slice(&c.to_one_based());
        write_out(k_out, c.k(), "k_out")
    })
}

/// Number of conflicting edges of a complete k-coloring.
///
/// # Safety
/// `colors` must hold `n` values in `1..=k`; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn recolor_penalty(
    g: *const RecolorGraph,
    colors: *const u32,
    k: usize,
    out: *mut usize,
) -> RecolorStatus {
    call(|| {
        let g = graph_ref(g)?;
        let c = coloring_arg(g, colors, k)?;
        write_out(out, penalty_complete(g, &c)?, "out")
    })
}

fn recycle_config(t: usize, recolor: RecolorRecolor) -> RecycleConfig {
    let cfg = if t == 0 {
        RecycleConfig::star()
    } else {
        RecycleConfig::random_classes(t)
    };
    cfg.with_recolor(match recolor {
        RecolorRecolor::Random => RecolorRule::Random,
        RecolorRecolor::LeastSelection => RecolorRule::LeastSelection,
    })
}

/// Recycles a legal (k+1)-coloring into a complete k-coloring. `t = 0`
/// dissolves the smallest class; otherwise `t` random classes.
///
/// # Safety
/// `colors` must hold `n` values in `1..=k_plus_one`; `colors_out` must have
/// room for `n` values.
#[no_mangle]
pub unsafe extern "C" fn recolor_recycle_complete(
    g: *const RecolorGraph,
    colors: *const u32,
    k_plus_one: usize,
    t: usize,
    recolor: RecolorRecolor,
    seed: u64,
    colors_out: *mut u32,
) -> RecolorStatus {
    call(|| {
        let g = graph_ref(g)?;
        let c = coloring_arg(g, colors, k_plus_one)?;
        let out = slice_out(colors_out, g.n(), "colors_out")?;
        let r = recycle_complete(g, &c, &recycle_config(t, recolor), &mut recolor::rng::seeded(seed))?;
        out.copy_from_slice(&r.to_one_based());
        Ok(())
    })
}

/// Recycles a legal (k+1)-coloring into a conflict-free partial k-coloring;
/// uncolored vertices are written as 0.
///
/// # Safety
/// As `recolor_recycle_complete`.
#[no_mangle]
pub unsafe extern "C" fn recolor_recycle_partial(
    g: *const RecolorGraph,
    colors: *const u32,
    k_plus_one: usize,
    t: usize,
    seed: u64,
    colors_out: *mut u32,
) -> RecolorStatus {
    call(|| {
        let g = graph_ref(g)?;
        let c = coloring_arg(g, colors, k_plus_one)?;
        let out = slice_out(colors_out, g.n(), "colors_out")?;
        let r = recycle_partial(g, &c, &recycle_config(t, RecolorRecolor::Random), &mut recolor::rng::seeded(seed))?;
        out.copy_from_slice(&r.to_one_based());
        Ok(())
    })
}

/// Tabucol, Dyn tenure, smallest-class recycling, 600 s, no iteration cap, seed 0.
#[no_mangle]
pub extern "C" fn recolor_solve_options_default() -> RecolorSolveOptions {
    RecolorSolveOptions {
        engine: RecolorEngine::Tabucol,
        tenure: RecolorTenure::Dyn,
        init: RecolorInit::RecycleStar,
        recycle_t: 1,
        recolor: RecolorRecolor::Random,
        time_limit_s: 600.0,
        iter_cap: 0,
        seed: 0,
    }
}

fn solve_config(o: &RecolorSolveOptions) -> Result<SolveConfig, Failure> {
    if !(o.time_limit_s > 0.0 && o.time_limit_s.is_finite()) {
        return Err(Failure::new(RecolorStatus::InvalidArgument, "time_limit_s must be positive"));
    }
    let init = match o.init {
        RecolorInit::RecycleStar => InitGenerator::RecycleStar,
        RecolorInit::RecycleT if o.recycle_t == 0 => {
            return Err(Failure::new(RecolorStatus::InvalidArgument, "recycle_t must be at least 1"))
        }
        RecolorInit::RecycleT => InitGenerator::RecycleT(o.recycle_t),
        RecolorInit::Greedy => InitGenerator::Greedy,
        RecolorInit::Random => InitGenerator::Random,
    };
    Ok(SolveConfig {
        engine: match o.engine {
            RecolorEngine::Tabucol => Engine::Tabucol,
            RecolorEngine::Partialcol => Engine::Partialcol,
        },
        init,
        recolor: match o.recolor {
            RecolorRecolor::Random => RecolorRule::Random,
            RecolorRecolor::LeastSelection => RecolorRule::LeastSelection,
        },
        scheme: match o.tenure {
            RecolorTenure::Dyn => TenureScheme::dyn_default(),
            RecolorTenure::Foo => TenureScheme::foo_default(),
        },
        time_limit: Duration::from_secs_f64(o.time_limit_s),
        iter_cap: (o.iter_cap > 0).then_some(o.iter_cap),
    })
}

/// Runs the iterative scheme. `options` may be null for the defaults.
///
/// # Safety
/// `g` must be a live graph handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn recolor_solve(
    g: *const RecolorGraph,
    options: *const RecolorSolveOptions,
    out: *mut *mut RecolorRun,
) -> RecolorStatus {
    call(|| {
        let g = graph_ref(g)?;
        let opts = options.as_ref().copied().unwrap_or_else(|| recolor_solve_options_default());
        let record = solve_vcol(g, &solve_config(&opts)?, opts.seed)?;
        write_out(out, Box::into_raw(Box::new(RecolorRun(record))), "out")
    })
}

/// Smallest k for which the run held a legal coloring; 0 for a null handle.
///
/// # Safety
/// `run` must be a live run handle or null.
#[no_mangle]
pub unsafe extern "C" fn recolor_run_best_k(run: *const RecolorRun) -> usize {
    run.as_ref().map_or(0, |r| r.0.best_k)
}

/// # Safety
/// `run` must be a live run handle or null.
#[no_mangle]
pub unsafe extern "C" fn recolor_run_dsatur_k(run: *const RecolorRun) -> usize {
    run.as_ref().map_or(0, |r| r.0.dsatur_k)
}

/// Copies the best coloring into `colors_out`, which holds `len` values.
///
/// # Safety
/// `colors_out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn recolor_run_coloring(run: *const RecolorRun, colors_out: *mut u32, len: usize) -> RecolorStatus {
    call(|| {
        let run = run.as_ref().ok_or_else(|| Failure::null("run"))?;
        let colors = &run.0.best_coloring;
        if len < colors.len() {
            return Err(Failure::new(
                RecolorStatus::BufferTooSmall,
                format!("buffer holds {len} colors, {} needed", colors.len()),
            ));
        }
        slice_out(colors_out, colors.len(), "colors_out")?.copy_from_slice(colors);
        Ok(())
    })
}

/// The full run record as JSON. Release with `recolor_string_free`.
///
/// # Safety
/// `run` must be a live run handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn recolor_run_to_json(run: *const RecolorRun, out: *mut *mut c_char) -> RecolorStatus {
    call(|| {
        let run = run.as_ref().ok_or_else(|| Failure::null("run"))?;
        let json = serde_json::to_string(&run.0).map_err(Error::from)?;
        let c = CString::new(json).expect("JSON has no NUL bytes");
        write_out(out, c.into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from `recolor_run_to_json` or be null.
#[no_mangle]
pub unsafe extern "C" fn recolor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `run` must come from `recolor_solve` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn recolor_run_free(run: *mut RecolorRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}
