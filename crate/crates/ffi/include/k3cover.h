#ifndef K3COVER_H
#define K3COVER_H

/* Generated by cbindgen from k3cover-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum K3cStatus {
  K3C_STATUS_OK = 0,
  K3C_STATUS_NULL_POINTER = 1,
  K3C_STATUS_INVALID_UTF8 = 2,
  K3C_STATUS_UNKNOWN_ID = 3,
  K3C_STATUS_DOMAIN = 4,
  K3C_STATUS_DEGENERATE_LATTICE = 5,
  K3C_STATUS_INVALID_GLUE = 6,
  K3C_STATUS_SHAPE = 7,
  K3C_STATUS_PARSE = 8,
  K3C_STATUS_RESOURCE = 9,
  K3C_STATUS_INVALID_INPUT = 10,
  K3C_STATUS_VERIFY_FAILED = 11,
  K3C_STATUS_PANIC = 12,
} K3cStatus;

/**
 * Opaque lattice handle.
 */
typedef struct K3cLattice K3cLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Build a named lattice (e.g. "L_9_2", "M_2e4", "K", "U", "U2", "D4",
 * "R2d:6"). On success `*out` owns the handle; free with
 * [`k3c_lattice_free`].
 */
enum K3cStatus k3c_lattice_build(const char *id, struct K3cLattice **out);

/**
 * Build a lattice from the shared JSON schema
 * `{"name", "labels", "gram", "glue"}`; glue vectors are applied.
 */
enum K3cStatus k3c_lattice_from_json(const char *json, struct K3cLattice **out);

/**
 * Release a lattice handle. Null is a no-op.
 */
void k3c_lattice_free(struct K3cLattice *lattice);

/**
 * Rank of the lattice, or -1 on a null handle.
 */
int32_t k3c_lattice_rank(const struct K3cLattice *lattice);

/**
 * Determinant of the Gram matrix as a decimal string.
 */
enum K3cStatus k3c_lattice_det(const struct K3cLattice *lattice, char **out);

/**
 * Inertia (n_plus, n_minus, n_zero) of the Gram form.
 */
enum K3cStatus k3c_lattice_signature(const struct K3cLattice *lattice,
                                     int32_t *n_plus,
                                     int32_t *n_minus,
                                     int32_t *n_zero);

/**
 * Minimal number of generators of the discriminant group.
 */
enum K3cStatus k3c_lattice_length(const struct K3cLattice *lattice, int32_t *out);

/**
 * Elementary divisors of the discriminant group, comma separated
 * (empty string for a unimodular lattice).
 */
enum K3cStatus k3c_lattice_divisors(const struct K3cLattice *lattice, char **out);

/**
 * Full invariant report of the lattice as a JSON document.
 */
enum K3cStatus k3c_lattice_info_json(const struct K3cLattice *lattice, char **out);

/**
 * Classify a branch configuration given as a comma-separated genus list
 * (e.g. "2,0,0,0,0,0"). The result is the cover-report JSON, or an
 * inadmissibility record with its violated condition.
 */
enum K3cStatus k3c_classify(const char *genera_csv, char **out);

/**
 * The candidate NS lattices for n branch curves, as JSON.
 */
enum K3cStatus k3c_ns_candidates(int32_t n, char **out);

/**
 * Brute-force rederivation of the candidate list (6 <= n <= 17), as JSON
 * including the per-candidate records.
 */
enum K3cStatus k3c_derive_candidates(int32_t n, char **out);

/**
 * Existence verdict for the extremal cases n = 1, 16, 17, as JSON.
 */
enum K3cStatus k3c_existence(int32_t n, int32_t h, char **out);

/**
 * Run the verification suite. `*out` receives the full JSON report either
 * way; the status is OK only when every check passes.
 */
enum K3cStatus k3c_verify_paper(char **out);

/**
 * Release a string returned by this library. Null is a no-op.
 */
void k3c_string_free(char *s);

/**
 * Library version as a static string; do not free.
 */
const char *k3c_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* K3COVER_H */
