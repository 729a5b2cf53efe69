//! C ABI over the `msts` library.
//!
//! Conventions:
//!
//! * Every fallible call returns an [`MstsStatus`]; results come back through
//!   out-pointers that are written only on success.
//! * Designs and pairs-triples designs are opaque handles owned by the
//!   caller and released with [`msts_design_free`] / [`msts_ptd_free`].
//! * On failure, [`msts_last_error`] returns a message for the calling
//!   thread; the pointer stays valid until the next failing call on that
//!   thread.
//! * Panics never cross the boundary; they surface as `MSTS_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use msts::extension::{canonicalize_alphabet, extend, ExtensionPlan};
use msts::format::{read_design, write_design, FormatError};
use msts::pairs_triples::{
    ptd_exists, ptd_from_one_factorization, ptd_from_sts, ptd_search, ptd_to_gdd,
    PairsTriplesDesign, SearchOutcome,
};
use msts::shortest::{construct_shortest, embedded_example_5_3};
use msts::subspace::{complementary_partition, weight3_codewords};
use msts::verify::{admissible_n_residues, check_necessary_conditions, verify_msts, verify_ptd};
use msts::{Design, MstsError};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MstsStatus {
    Ok = 0,
    /// Parameters or inputs outside the operation's domain.
    InvalidArgument = 1,
    /// Admissible parameters with no implemented construction.
    Unsupported = 2,
    /// An input failed verification.
    Rejected = 3,
    /// File could not be read or written.
    Io = 4,
    /// File contents are malformed.
    Format = 5,
    /// A required pointer was null.
    NullPointer = 6,
    /// A search ran out of budget; not an error in the library.
    Exhausted = 7,
    /// A caller buffer was too short; the required size was reported.
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque design handle.
pub struct MstsDesign(Design);

/// Opaque pairs-triples design handle.
pub struct MstsPtd(PairsTriplesDesign);

/// Flat summary of a verification report.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MstsVerifySummary {
    pub accepted: bool,
    pub coverage_ok: bool,
    pub weight2_words: u64,
    pub uncovered: u64,
    pub multicovered: u64,
    /// 0 when the design has fewer than two codewords.
    pub min_distance: u64,
    pub distance_violations: u64,
    pub has_count_expected: bool,
    pub count_expected: u64,
    pub count_actual: u64,
}

/// Verdicts of the five necessary conditions.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MstsConditions {
    pub parity_n_k: bool,
    pub parity_n_l: bool,
    pub k_l_odd: bool,
    pub length_bound: bool,
    pub divisibility: bool,
    pub overall: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

struct Failure(MstsStatus, String);

impl From<MstsError> for Failure {
    fn from(e: MstsError) -> Self {
        let status = match e {
            MstsError::Unsupported(_) => MstsStatus::Unsupported,
            MstsError::Rejected(_) => MstsStatus::Rejected,
            _ => MstsStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let status = match e {
            FormatError::Io(_) => MstsStatus::Io,
            _ => MstsStatus::Format,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MstsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting failures and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> MstsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MstsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            MstsStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn path_arg(p: *const c_char) -> Result<String, Failure> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| Failure(MstsStatus::InvalidArgument, "path is not UTF-8".into()))
}

/// Message for the last failing call on this thread; empty if none.
#[no_mangle]
pub extern "C" fn msts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Shortest-length system for `k, l = 1 or 3 (mod 6)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn msts_construct_shortest(k: u32, l: u32, out: *mut *mut MstsDesign) -> MstsStatus {
    guard(|| put(out, MstsDesign(construct_shortest(k, l)?)))
}

/// The fixed 80-codeword `k = 5`, `l = 3` system.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn msts_example_5_3(out: *mut *mut MstsDesign) -> MstsStatus {
    guard(|| put(out, MstsDesign(embedded_example_5_3())))
}

/// Weight-3 codewords of the perfect code from the subspace partition with
/// parameters `kprime`, `lprime`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn msts_partition_code(kprime: u32, lprime: u32, out: *mut *mut MstsDesign) -> MstsStatus {
    guard(|| {
        let p = complementary_partition(kprime, lprime)?;
        put(out, MstsDesign(weight3_codewords(&p)))
    })
}

/// # Safety
/// `design` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn msts_design_free(design: *mut MstsDesign) {
    if !design.is_null() {
        drop(Box::from_raw(design));
    }
}

/// Number of codewords; 0 for a null handle.
///
/// # Safety
/// `design` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn msts_design_len(design: *const MstsDesign) -> usize {
    design.as_ref().map_or(0, |d| d.0.len())
}

/// Copies the coordinate sizes into `sizes` (capacity `cap`) and stores the
/// alphabet length in `len`. With a short or null buffer only `len` is
/// written and `MSTS_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `design` must be a live handle, `sizes` valid for `cap` writes, `len`
/// valid for one write.
#[no_mangle]
pub unsafe extern "C" fn msts_design_alphabet(
    design: *const MstsDesign,
    sizes: *mut u32,
    cap: usize,
    len: *mut usize,
) -> MstsStatus {
    guard(|| {
        let d = get(design, "design")?;
        if len.is_null() {
            return Err(null("len"));
        }
        let s = d.0.alphabet().sizes();
        *len = s.len();
        if sizes.is_null() || cap < s.len() {
            return Err(Failure(
                MstsStatus::BufferTooSmall,
                format!("alphabet needs {} entries", s.len()),
            ));
        }
        ptr::copy_nonoverlapping(s.as_ptr(), sizes, s.len());
        Ok(())
    })
}

/// The `index`-th codeword in sorted order, as three (position, value)
/// pairs.
///
/// # Safety
/// `design` must be a live handle; `positions` and `values` valid for three
/// writes each.
#[no_mangle]
pub unsafe extern "C" fn msts_design_codeword(
    design: *const MstsDesign,
    index: usize,
    positions: *mut u32,
    values: *mut u32,
) -> MstsStatus {
    guard(|| {
        let d = get(design, "design")?;
        if positions.is_null() || values.is_null() {
            return Err(null("positions or values"));
        }
        let cw = d.0.iter().nth(index).ok_or_else(|| {
            Failure(
                MstsStatus::InvalidArgument,
                format!("index {index} out of range for {} codewords", d.0.len()),
            )
        })?;
        for (i, &(p, v)) in cw.entries().iter().enumerate() {
            *positions.add(i) = p;
            *values.add(i) = v;
        }
        Ok(())
    })
}

/// Reads a design file.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn msts_design_read_file(path: *const c_char, out: *mut *mut MstsDesign) -> MstsStatus {
    guard(|| {
        let path = path_arg(path)?;
        let file = fs::File::open(&path).map_err(|e| Failure(MstsStatus::Io, format!("{path}: {e}")))?;
        put(out, MstsDesign(read_design(BufReader::new(file))?))
    })
}

/// Writes a design file.
///
/// # Safety
/// `design` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn msts_design_write_file(design: *const MstsDesign, path: *const c_char) -> MstsStatus {
    guard(|| {
        let d = get(design, "design")?;
        let path = path_arg(path)?;
        let file = fs::File::create(&path).map_err(|e| Failure(MstsStatus::Io, format!("{path}: {e}")))?;
        write_design(&d.0, std::io::BufWriter::new(file)).map_err(|e| Failure(MstsStatus::Io, format!("{path}: {e}")))
    })
}

/// Verifies a design. The summary is filled whether or not it is accepted.
///
/// # Safety
/// `design` must be a live handle; `summary` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn msts_verify(design: *const MstsDesign, summary: *mut MstsVerifySummary) -> MstsStatus {
    guard(|| {
        let d = get(design, "design")?;
        if summary.is_null() {
            return Err(null("summary"));
        }
        let r = verify_msts(&d.0);
        *summary = MstsVerifySummary {
            accepted: r.accepted,
            coverage_ok: r.coverage_ok,
            weight2_words: r.weight2_words,
            uncovered: r.uncovered.len() as u64,
            multicovered: r.multicovered.len() as u64,
            min_distance: r.min_distance.unwrap_or(0) as u64,
            distance_violations: r.distance_violations.len() as u64,
            has_count_expected: r.count_expected.is_some(),
            count_expected: r.count_expected.unwrap_or(0),
            count_actual: r.count_actual,
        };
        Ok(())
    })
}

/// Residues of `n` mod 6 compatible with the necessary conditions, as a
/// bitmask: bit `i` set when `n = i (mod 6)` is admissible.
///
/// # Safety
/// `mask` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn msts_admissible_residues(k: u64, l: u64, mask: *mut u8) -> MstsStatus {
    guard(|| {
        if mask.is_null() {
            return Err(null("mask"));
        }
        *mask = admissible_n_residues(k, l)?.iter().fold(0u8, |m, &r| m | (1 << r));
        Ok(())
    })
}

/// Evaluates the five necessary conditions for `(k, l, n)`.
///
/// # Safety
/// `out` must be valid for one write.
#[no_mangle]
pub unsafe extern "C" fn msts_check_conditions(k: u64, l: u64, n: u64, out: *mut MstsConditions) -> MstsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let r = check_necessary_conditions(k, l, n);
        *out = MstsConditions {
            parity_n_k: r.parity_n_k,
            parity_n_l: r.parity_n_l,
            k_l_odd: r.k_l_odd,
            length_bound: r.length_bound,
            divisibility: r.divisibility,
            overall: r.overall,
        };
        Ok(())
    })
}

/// Whether an `(m, r)`-pairs-triples design exists.
#[no_mangle]
pub extern "C" fn msts_ptd_exists(m: u32, r: u32) -> bool {
    ptd_exists(m, r)
}

/// `(m, m - 1)`-pairs-triples design from a one-factorization.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn msts_ptd_one_factorization(m: u32, out: *mut *mut MstsPtd) -> MstsStatus {
    guard(|| put(out, MstsPtd(ptd_from_one_factorization(m)?)))
}

/// `(m, 1)`-pairs-triples design from a Steiner triple system on `m + 1`
/// points.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn msts_ptd_sts(m: u32, out: *mut *mut MstsPtd) -> MstsStatus {
    guard(|| put(out, MstsPtd(ptd_from_sts(m)?)))
}

/// Bounded exact-cover search. `nodes` (may be null) receives the number of
/// search nodes visited. Returns `MSTS_STATUS_EXHAUSTED` when the budget
/// runs out and `MSTS_STATUS_REJECTED` when the search space holds no
/// design.
///
/// # Safety
/// `out` must be valid for writes; `nodes` null or valid for one write.
#[no_mangle]
pub unsafe extern "C" fn msts_ptd_search(
    m: u32,
    r: u32,
    budget: u64,
    out: *mut *mut MstsPtd,
    nodes: *mut u64,
) -> MstsStatus {
    guard(|| {
        let outcome = ptd_search(m, r, budget)?;
        let visited = match &outcome {
            SearchOutcome::Found { nodes, .. }
            | SearchOutcome::Exhausted { nodes }
            | SearchOutcome::NoSolution { nodes } => *nodes,
        };
        if !nodes.is_null() {
            *nodes = visited;
        }
        match outcome {
            SearchOutcome::Found { design, .. } => put(out, MstsPtd(design)),
            SearchOutcome::Exhausted { .. } => Err(Failure(
                MstsStatus::Exhausted,
                format!("budget exhausted after {visited} nodes"),
            )),
            SearchOutcome::NoSolution { .. } => Err(Failure(
                MstsStatus::Rejected,
                format!("no design found after exploring {visited} nodes"),
            )),
        }
    })
}

/// # Safety
/// `ptd` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn msts_ptd_free(ptd: *mut MstsPtd) {
    if !ptd.is_null() {
        drop(Box::from_raw(ptd));
    }
}

/// Stores the parameters `m`, `r` and the number of triples.
///
/// # Safety
/// `ptd` must be a live handle; the out-pointers valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn msts_ptd_shape(ptd: *const MstsPtd, m: *mut u32, r: *mut u32, triples: *mut usize) -> MstsStatus {
    guard(|| {
        let p = &get(ptd, "ptd")?.0;
        if m.is_null() || r.is_null() || triples.is_null() {
            return Err(null("out"));
        }
        *m = p.m;
        *r = p.r;
        *triples = p.triples.len();
        Ok(())
    })
}

/// Checks every pairs-triples invariant.
///
/// # Safety
/// `ptd` must be a live handle; `accepted` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn msts_ptd_verify(ptd: *const MstsPtd, accepted: *mut bool) -> MstsStatus {
    guard(|| {
        let p = get(ptd, "ptd")?;
        if accepted.is_null() {
            return Err(null("accepted"));
        }
        *accepted = verify_ptd(&p.0).accepted;
        Ok(())
    })
}

/// The equivalent system over `Z_2^m x Z_(r+1)`.
///
/// # Safety
/// `ptd` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn msts_ptd_to_design(ptd: *const MstsPtd, out: *mut *mut MstsDesign) -> MstsStatus {
    guard(|| {
        let p = get(ptd, "ptd")?;
        put(out, MstsDesign(ptd_to_gdd(&p.0)?))
    })
}

/// Lengthens `base` with `ptd`; optionally moves binary coordinates first.
///
/// # Safety
/// `base` and `ptd` must be live handles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn msts_extend(
    base: *const MstsDesign,
    ptd: *const MstsPtd,
    canonical: bool,
    out: *mut *mut MstsDesign,
) -> MstsStatus {
    guard(|| {
        let base = get(base, "base")?;
        let ptd = get(ptd, "ptd")?;
        let plan = ExtensionPlan::new(&base.0, &ptd.0)?;
        let mut d = extend(&plan)?;
        if canonical {
            d = canonicalize_alphabet(&d);
        }
        put(out, MstsDesign(d))
    })
}

/// Copy of `design` with binary coordinates moved ahead of the others.
///
/// # Safety
/// `design` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn msts_canonicalize(design: *const MstsDesign, out: *mut *mut MstsDesign) -> MstsStatus {
    guard(|| {
        let d = get(design, "design")?;
        put(out, MstsDesign(canonicalize_alphabet(&d.0)))
    })
}
