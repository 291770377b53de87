#ifndef PERMLAB_H
#define PERMLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum {
  PM_FORMAT_JSON = 0,
  PM_FORMAT_DOT = 1,
} PmFormat;

typedef enum {
  PM_STATUS_OK = 0,
  PM_STATUS_NULL_POINTER = 1,
  PM_STATUS_INVALID_ARGUMENT = 2,
  PM_STATUS_CAP_EXCEEDED = 3,
  // The operation ran but a property check failed.
  PM_STATUS_VERIFICATION_FAILED = 4,
  // Output buffer too small; the required length has been written.
  PM_STATUS_BUFFER_TOO_SMALL = 5,
  PM_STATUS_INTERNAL = 6,
} PmStatus;

// Lattice levels `A_0 ⊆ … ⊆ A_top` with their verified orders.
typedef struct PmLattice PmLattice;

// Permutation of `{0, …, len - 1}`.
typedef struct PmPerm PmPerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread; empty after success.
// Valid until the next call on the same thread.
const char *pm_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void pm_string_free(char *s);

// Builds a permutation from its image vector.
//
// # Safety
// `images` must point to `len` readable values; `out` must be writable.
PmStatus pm_perm_new(const size_t *images, size_t len, PmPerm **out);

// # Safety
// `p` must be null or a live handle from this library.
void pm_perm_free(PmPerm *p);

// Degree of the permutation; 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t pm_perm_len(const PmPerm *p);

// # Safety
// `p` must be a live handle and `out` writable.
PmStatus pm_perm_apply(const PmPerm *p, size_t x, size_t *out);

// Copies the image vector into `buf`. If `cap` is too small, writes the
// required length to `len_out` and returns `PM_STATUS_BUFFER_TOO_SMALL`.
//
// # Safety
// `buf` must have room for `cap` values; `len_out` must be writable.
PmStatus pm_perm_images(const PmPerm *p, size_t *buf, size_t cap, size_t *len_out);

// `a ∘ b`, so that `x ↦ a(b(x))`.
//
// # Safety
// `a`, `b` must be live handles; `out` writable.
PmStatus pm_perm_compose(const PmPerm *a, const PmPerm *b, PmPerm **out);

// # Safety
// `p` must be a live handle; `out` writable.
PmStatus pm_perm_inverse(const PmPerm *p, PmPerm **out);

// Permutation moving exactly the points moved by `f` or by `g`.
//
// # Safety
// `f`, `g` must be live handles; `out` writable.
PmStatus pm_union_mov(const PmPerm *f, const PmPerm *g, PmPerm **out);

// Bijection `x → y` from injections `f: x → y` and `g: y → x`, written to
// `out[0..nx]`.
//
// # Safety
// `f` holds `nx` values, `g` holds `ny` values, `out` has room for `nx`.
PmStatus pm_cantor_bernstein(const size_t *f, size_t nx, const size_t *g, size_t ny, size_t *out);

// Builds levels `A_0 … A_top` (at most the library cap).
//
// # Safety
// `out` must be writable.
PmStatus pm_lattice_new(size_t top, PmLattice **out);

// # Safety
// `l` must be null or a live handle.
void pm_lattice_free(PmLattice *l);

// `|A_n|`.
//
// # Safety
// `l` must be a live handle; `out` writable.
PmStatus pm_lattice_size(const PmLattice *l, size_t n, size_t *out);

// Whether `a ≤ b` in `A_n`.
//
// # Safety
// `l` must be a live handle; `out` writable.
PmStatus pm_lattice_leq(const PmLattice *l, size_t n, size_t a, size_t b, bool *out);

// Runs every building-block check on `A_n`. On success `out_pass` holds
// the verdict; `report_json`, if not null, receives the report.
//
// # Safety
// `l` must be a live handle; `out_pass` writable; `report_json` null or writable.
PmStatus pm_lattice_verify(const PmLattice *l, size_t n, bool *out_pass, char **report_json);

// `A_n` as JSON or a DOT Hasse diagram.
//
// # Safety
// `l` must be a live handle; `out` writable.
PmStatus pm_lattice_export(const PmLattice *l, size_t n, PmFormat format, char **out);

// Extends an automorphism `g` of `A_m` to `A_n` (`n - m` even).
//
// # Safety
// `l`, `g` must be live handles; `out` writable.
PmStatus pm_lattice_extend(const PmLattice *l, size_t m, const PmPerm *g, size_t n, PmPerm **out);

// Runs the construction suite; `only` may be null. The verdict goes to
// `out_pass` and the JSON report, if requested, to `report_json`.
//
// # Safety
// `only` must be null or a NUL-terminated string; `out_pass` writable;
// `report_json` null or writable.
PmStatus pm_constructions_test(size_t size,
                               const char *only,
                               uint64_t seed,
                               bool *out_pass,
                               char **report_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PERMLAB_H */
