#ifndef MSTS_H
#define MSTS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum MstsStatus {
  MSTS_STATUS_OK = 0,
  // Parameters or inputs outside the operation's domain.
  MSTS_STATUS_INVALID_ARGUMENT = 1,
  // Admissible parameters with no implemented construction.
  MSTS_STATUS_UNSUPPORTED = 2,
  // An input failed verification.
  MSTS_STATUS_REJECTED = 3,
  // File could not be read or written.
  MSTS_STATUS_IO = 4,
  // File contents are malformed.
  MSTS_STATUS_FORMAT = 5,
  // A required pointer was null.
  MSTS_STATUS_NULL_POINTER = 6,
  // A search ran out of budget; not an error in the library.
  MSTS_STATUS_EXHAUSTED = 7,
  // A caller buffer was too short; the required size was reported.
  MSTS_STATUS_BUFFER_TOO_SMALL = 8,
  MSTS_STATUS_PANIC = 9,
} MstsStatus;

// Opaque design handle.
typedef struct MstsDesign MstsDesign;

// Opaque pairs-triples design handle.
typedef struct MstsPtd MstsPtd;

// Flat summary of a verification report.
typedef struct MstsVerifySummary {
  bool accepted;
  bool coverage_ok;
  uint64_t weight2_words;
  uint64_t uncovered;
  uint64_t multicovered;
  // 0 when the design has fewer than two codewords.
  uint64_t min_distance;
  uint64_t distance_violations;
  bool has_count_expected;
  uint64_t count_expected;
  uint64_t count_actual;
} MstsVerifySummary;

// Verdicts of the five necessary conditions.
typedef struct MstsConditions {
  bool parity_n_k;
  bool parity_n_l;
  bool k_l_odd;
  bool length_bound;
  bool divisibility;
  bool overall;
} MstsConditions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; empty if none.
const char *msts_last_error(void);

// Shortest-length system for `k, l = 1 or 3 (mod 6)`.
//
// # Safety
// `out` must be valid for writes.
enum MstsStatus msts_construct_shortest(uint32_t k, uint32_t l, struct MstsDesign **out);

// The fixed 80-codeword `k = 5`, `l = 3` system.
//
// # Safety
// `out` must be valid for writes.
enum MstsStatus msts_example_5_3(struct MstsDesign **out);

// Weight-3 codewords of the perfect code from the subspace partition with
// parameters `kprime`, `lprime`.
//
// # Safety
// `out` must be valid for writes.
enum MstsStatus msts_partition_code(uint32_t kprime, uint32_t lprime, struct MstsDesign **out);

// # Safety
// `design` must be null or a handle from this library, not yet freed.
void msts_design_free(struct MstsDesign *design);

// Number of codewords; 0 for a null handle.
//
// # Safety
// `design` must be null or a live handle.
size_t msts_design_len(const struct MstsDesign *design);

// Copies the coordinate sizes into `sizes` (capacity `cap`) and stores the
// alphabet length in `len`. With a short or null buffer only `len` is
// written and `MSTS_STATUS_BUFFER_TOO_SMALL` is returned.
//
// # Safety
// `design` must be a live handle, `sizes` valid for `cap` writes, `len`
// valid for one write.
enum MstsStatus msts_design_alphabet(const struct MstsDesign *design,
                                     uint32_t *sizes,
                                     size_t cap,
                                     size_t *len);

// The `index`-th codeword in sorted order, as three (position, value)
// pairs.
//
// # Safety
// `design` must be a live handle; `positions` and `values` valid for three
// writes each.
enum MstsStatus msts_design_codeword(const struct MstsDesign *design,
                                     size_t index,
                                     uint32_t *positions,
                                     uint32_t *values);

// Reads a design file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` valid for writes.
enum MstsStatus msts_design_read_file(const char *path, struct MstsDesign **out);

// Writes a design file.
//
// # Safety
// `design` must be a live handle; `path` a NUL-terminated string.
enum MstsStatus msts_design_write_file(const struct MstsDesign *design, const char *path);

// Verifies a design. The summary is filled whether or not it is accepted.
//
// # Safety
// `design` must be a live handle; `summary` valid for one write.
enum MstsStatus msts_verify(const struct MstsDesign *design, struct MstsVerifySummary *summary);

// Residues of `n` mod 6 compatible with the necessary conditions, as a
// bitmask: bit `i` set when `n = i (mod 6)` is admissible.
//
// # Safety
// `mask` must be valid for one write.
enum MstsStatus msts_admissible_residues(uint64_t k, uint64_t l, uint8_t *mask);

// Evaluates the five necessary conditions for `(k, l, n)`.
//
// # Safety
// `out` must be valid for one write.
enum MstsStatus msts_check_conditions(uint64_t k,
                                      uint64_t l,
                                      uint64_t n,
                                      struct MstsConditions *out);

// Whether an `(m, r)`-pairs-triples design exists.
bool msts_ptd_exists(uint32_t m, uint32_t r);

// `(m, m - 1)`-pairs-triples design from a one-factorization.
//
// # Safety
// `out` must be valid for writes.
enum MstsStatus msts_ptd_one_factorization(uint32_t m, struct MstsPtd **out);

// `(m, 1)`-pairs-triples design from a Steiner triple system on `m + 1`
// points.
//
// # Safety
// `out` must be valid for writes.
enum MstsStatus msts_ptd_sts(uint32_t m, struct MstsPtd **out);

// Bounded exact-cover search. `nodes` (may be null) receives the number of
// search nodes visited. Returns `MSTS_STATUS_EXHAUSTED` when the budget
// runs out and `MSTS_STATUS_REJECTED` when the search space holds no
// design.
//
// # Safety
// `out` must be valid for writes; `nodes` null or valid for one write.
enum MstsStatus msts_ptd_search(uint32_t m,
                                uint32_t r,
                                uint64_t budget,
                                struct MstsPtd **out,
                                uint64_t *nodes);

// # Safety
// `ptd` must be null or a handle from this library, not yet freed.
void msts_ptd_free(struct MstsPtd *ptd);

// Stores the parameters `m`, `r` and the number of triples.
//
// # Safety
// `ptd` must be a live handle; the out-pointers valid for one write each.
enum MstsStatus msts_ptd_shape(const struct MstsPtd *ptd,
                               uint32_t *m,
                               uint32_t *r,
                               size_t *triples);

// Checks every pairs-triples invariant.
//
// # Safety
// `ptd` must be a live handle; `accepted` valid for one write.
enum MstsStatus msts_ptd_verify(const struct MstsPtd *ptd, bool *accepted);

// The equivalent system over `Z_2^m x Z_(r+1)`.
//
// # Safety
// `ptd` must be a live handle; `out` valid for writes.
enum MstsStatus msts_ptd_to_design(const struct MstsPtd *ptd, struct MstsDesign **out);

// Lengthens `base` with `ptd`; optionally moves binary coordinates first.
//
// # Safety
// `base` and `ptd` must be live handles; `out` valid for writes.
enum MstsStatus msts_extend(const struct MstsDesign *base,
                            const struct MstsPtd *ptd,
                            bool canonical,
                            struct MstsDesign **out);

// Copy of `design` with binary coordinates moved ahead of the others.
//
// # Safety
// `design` must be a live handle; `out` valid for writes.
enum MstsStatus msts_canonicalize(const struct MstsDesign *design, struct MstsDesign **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MSTS_H */
