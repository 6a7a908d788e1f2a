#ifndef LISSAJOUS3_H
#define LISSAJOUS3_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum L3Method {
  L3_METHOD_AFP = 0,
  L3_METHOD_DLP = 1,
} L3Method;

typedef enum L3Status {
  L3_STATUS_OK = 0,
  L3_STATUS_INVALID_ARGUMENT = 1,
  L3_STATUS_NULL_POINTER = 2,
  L3_STATUS_NUMERICAL = 3,
  L3_STATUS_BUFFER_TOO_SMALL = 4,
  L3_STATUS_PANIC = 5,
} L3Status;

typedef enum L3Variant {
  L3_VARIANT_GAUSS = 0,
  L3_VARIANT_LOBATTO = 1,
} L3Variant;

/**
 * Coefficients of a trivariate polynomial in the graded Chebyshev basis.
 */
typedef struct L3Coeffs L3Coeffs;

/**
 * Extremal point set with its factorized interpolation matrix.
 */
typedef struct L3Extremal L3Extremal;

/**
 * Lattice of a Lissajous curve.
 */
typedef struct L3Lattice L3Lattice;

/**
 * Callback evaluating a function at `(x, y, z)`; `user` is passed through.
 */
typedef double (*L3Function)(double x, double y, double z, void *user);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *l3_version(void);

/**
 * Message of the last failure on this thread, or NULL. Valid until the next
 * call into the library from the same thread.
 */
const char *l3_last_error(void);

/**
 * Writes the frequencies `(a, b, c)` of degree `n` to `out[0..3]`.
 */
enum L3Status l3_frequency_triple(uint64_t n, uint64_t *out);

/**
 * Sets `*holds` to whether no integer relation of 1-norm at most `budget`
 * annihilates `freqs[0..3]`.
 */
enum L3Status l3_check_property(const uint64_t *freqs, uint64_t budget, bool *holds);

enum L3Status l3_lattice_new(size_t n, enum L3Variant v, struct L3Lattice **out);

void l3_lattice_free(struct L3Lattice *lattice);

/**
 * Number of nodes, 0 for NULL.
 */
size_t l3_lattice_len(const struct L3Lattice *lattice);

/**
 * Copies the nodes as `x0 y0 z0 x1 ...` into `out`, which holds `cap` doubles.
 */
enum L3Status l3_lattice_nodes(const struct L3Lattice *lattice, double *out, size_t cap);

/**
 * Copies the cubature weights into `out`, which holds `cap` doubles.
 */
enum L3Status l3_lattice_weights(const struct L3Lattice *lattice, double *out, size_t cap);

/**
 * Hyperinterpolation coefficients from `len` samples taken at the lattice nodes.
 */
enum L3Status l3_hyper_from_samples(const struct L3Lattice *lattice,
                                    const double *samples,
                                    size_t len,
                                    struct L3Coeffs **out);

/**
 * Hyperinterpolation coefficients of a callback. The callback may be
 * invoked from several threads at once.
 */
enum L3Status l3_hyper_from_fn(size_t n,
                               enum L3Variant v,
                               L3Function f,
                               void *user,
                               struct L3Coeffs **out);

void l3_coeffs_free(struct L3Coeffs *coeffs);

/**
 * Number of coefficients, 0 for NULL.
 */
size_t l3_coeffs_len(const struct L3Coeffs *coeffs);

/**
 * Copies the coefficients in graded order into `out`.
 */
enum L3Status l3_coeffs_get(const struct L3Coeffs *coeffs, double *out, size_t cap);

enum L3Status l3_coeffs_eval(const struct L3Coeffs *coeffs,
                             double x,
                             double y,
                             double z,
                             double *out);

/**
 * Lattice cubature of a callback against the product Chebyshev measure.
 */
enum L3Status l3_cubature(size_t n, enum L3Variant v, L3Function f, void *user, double *out);

enum L3Status l3_extremal_new(size_t n,
                              enum L3Variant v,
                              enum L3Method method,
                              struct L3Extremal **out);

void l3_extremal_free(struct L3Extremal *set);

/**
 * Number of points, 0 for NULL.
 */
size_t l3_extremal_len(const struct L3Extremal *set);

/**
 * Copies the 0-based lattice indices of the points into `out`.
 */
enum L3Status l3_extremal_indices(const struct L3Extremal *set, size_t *out, size_t cap);

/**
 * Copies the points as `x0 y0 z0 x1 ...` into `out`.
 */
enum L3Status l3_extremal_points(const struct L3Extremal *set, double *out, size_t cap);

/**
 * Interpolating polynomial through `values` given at the extremal points.
 */
enum L3Status l3_extremal_interpolate(const struct L3Extremal *set,
                                      const double *values,
                                      size_t len,
                                      struct L3Coeffs **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LISSAJOUS3_H */
