#ifndef ATIYAH_H
#define ATIYAH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum AtiyahStatus {
  ATIYAH_STATUS_OK = 0,
  ATIYAH_STATUS_NULL_POINTER = 1,
  ATIYAH_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The field cannot be built, or the request needs a finite field.
   */
  ATIYAH_STATUS_UNSUPPORTED = 3,
  /**
   * The computation ran but could not certify its answer.
   */
  ATIYAH_STATUS_COMPUTATION = 4,
  /**
   * The lambda search reached its cap.
   */
  ATIYAH_STATUS_CAP_REACHED = 5,
  ATIYAH_STATUS_PANIC = 6,
} AtiyahStatus;

/**
 * Opaque handle to a ruled surface over a fixed base field.
 */
typedef struct AtiyahSurfaceHandle AtiyahSurfaceHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the surface over `F_{p^k}`, or over the rationals when `p` is 0.
 *
 * `coeffs` holds `"a1,a2,a3,a4,a6"`. The marked point is `(qx, qy)`; pass
 * two null pointers to take the first affine point found. On success
 * `*out` owns a handle for [`atiyah_surface_free`].
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings, and `out`
 * must be writable.
 */
enum AtiyahStatus atiyah_surface_new(const char *coeffs,
                                     uint64_t p,
                                     uint32_t k,
                                     const char *qx,
                                     const char *qy,
                                     struct AtiyahSurfaceHandle **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `h` must come from [`atiyah_surface_new`] and not be used afterwards.
 */
void atiyah_surface_free(struct AtiyahSurfaceHandle *h);

/**
 * Characteristic of the base field.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum AtiyahStatus atiyah_surface_characteristic(const struct AtiyahSurfaceHandle *h, uint64_t *out);

/**
 * Number of points of the curve, including infinity. Finite fields only.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum AtiyahStatus atiyah_group_order(const struct AtiyahSurfaceHandle *h, uint64_t *out);

/**
 * Dimension of the sections of `O(n E_inf)`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum AtiyahStatus atiyah_h0_untwisted(const struct AtiyahSurfaceHandle *h, size_t n, size_t *out);

/**
 * Dimension of the sections of `O(l E_inf + f_q)`.
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum AtiyahStatus atiyah_h0_twisted(const struct AtiyahSurfaceHandle *h, size_t l, size_t *out);

/**
 * Dimension of the twisted sections at level `l` vanishing to order `m`
 * at the point over `(x, y)` with fiber coordinate `w0`.
 *
 * # Safety
 * `h` must be a live handle, the strings valid, and `out` writable.
 */
enum AtiyahStatus atiyah_h0_fat(const struct AtiyahSurfaceHandle *h,
                                size_t l,
                                const char *x,
                                const char *y,
                                const char *w0,
                                size_t m,
                                size_t *out);

/**
 * Least level carrying a curve of multiplicity at least `m` at the given
 * point, searching up to `cap` (0 picks the default cap).
 *
 * Returns [`AtiyahStatus::CapReached`] when no level up to the cap works.
 *
 * # Safety
 * `h` must be a live handle, the strings valid, and `out` writable.
 */
enum AtiyahStatus atiyah_lambda(const struct AtiyahSurfaceHandle *h,
                                const char *x,
                                const char *y,
                                const char *w0,
                                size_t m,
                                size_t cap,
                                size_t *out);

/**
 * Message of the last failed call on this thread, or null after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *atiyah_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *atiyah_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ATIYAH_H */
