#ifndef HKCOUNT_H
#define HKCOUNT_H

/* Generated by cbindgen from hkcount-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every FFI call.
typedef enum HkStatus {
  // Success.
  HK_OK = 0,
  // A required pointer argument was NULL.
  HK_NULL_POINTER = 1,
  // An argument was out of range for the operation.
  HK_INVALID_ARGUMENT = 2,
  // A mathematical invariant failed or the computation errored.
  HK_MATH_ERROR = 3,
  // The output buffer is too small for the result and its NUL terminator.
  HK_BUFFER_TOO_SMALL = 4,
} HkStatus;

// Evaluation route for [`hk_k3two_count`].
typedef enum HkMethod {
  // The two-variable Jacobi-form route, with representative cross-checks.
  HK_METHOD_JACOBI = 0,
  // The one-variable Γ₀(4) route.
  HK_METHOD_GAMMA0 = 1,
  // Both routes, which must agree.
  HK_METHOD_BOTH = 2,
} HkMethod;

// Opaque handle to the two-variable K3^\[2\] counting series
// `Σ c(n,k) q^n y^k`.
typedef struct HkJacobiSeries HkJacobiSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// A static description of a status code.
const char *hk_status_message(enum HkStatus status);

// The number of elliptic curves of fixed general j-invariant on a K3
// surface with `(β,β) = 2h - 2`, as a decimal string. `h` is capped at
// 4096.
//
// # Safety
// `buf` must point to at least `buf_len` writable bytes.
enum HkStatus hk_k3_count(uint64_t h, char *buf, uintptr_t buf_len);

// The count for K3^\[2\]-type fourfolds at `(β,β) = s/2`, as a decimal
// string. Squares `s ≡ 1, 2 (mod 4)` carry no curve class and report "0".
//
// # Safety
// `buf` must point to at least `buf_len` writable bytes.
enum HkStatus hk_k3two_count(int64_t s, enum HkMethod method, char *buf, uintptr_t buf_len);

// The genus of the curve of cubic cones in the Fano variety of lines of a
// general cubic fourfold (expected: 631).
//
// # Safety
// `out` must point to a writable `int64_t`.
enum HkStatus hk_fano_genus(int64_t *out);

// The degree of the map from that curve to the j-line (expected: 3780).
// With `via_euler` the singular-cubics divisor is recomputed by the
// Euler-class pushforward and both routes must agree.
//
// # Safety
// `out` must point to a writable `int64_t`.
enum HkStatus hk_fano_j_degree(bool via_euler, int64_t *out);

// Computes the series to the given exclusive q-order. Returns NULL when
// `qorder` is out of range. Free with [`hk_jacobi_series_free`].
struct HkJacobiSeries *hk_jacobi_series_new(int64_t qorder);

// The exclusive q-order of the handle, or -1 for NULL.
//
// # Safety
// `series` must be NULL or a pointer from [`hk_jacobi_series_new`].
int64_t hk_jacobi_series_order(const struct HkJacobiSeries *series);

// The coefficient of `q^n y^k` as a decimal string.
//
// # Safety
// `series` must come from [`hk_jacobi_series_new`]; `buf` must point to at
// least `buf_len` writable bytes.
enum HkStatus hk_jacobi_series_coefficient(const struct HkJacobiSeries *series,
                                           int64_t n,
                                           int64_t k,
                                           char *buf,
                                           uintptr_t buf_len);

// Releases a series handle; NULL is a no-op.
//
// # Safety
// `series` must be NULL or a pointer from [`hk_jacobi_series_new`] that has
// not been freed already.
void hk_jacobi_series_free(struct HkJacobiSeries *series);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HKCOUNT_H */
