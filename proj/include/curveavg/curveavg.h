/*
 * curveavg C API: averaging operators along polynomial curves with affine
 * arclength measure.
 *
 * All functions return a curveavg_status; handles are opaque and must be
 * released with the matching destroy call. String outputs are allocated by
 * the library and released with curveavg_string_free. On any non-OK status,
 * curveavg_last_error() describes the failure for the calling thread.
 */
#ifndef CURVEAVG_H
#define CURVEAVG_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t curveavg_status;

enum {
    CURVEAVG_OK = 0,
    CURVEAVG_ERR_CONFIG = 1,     /* config/usage errors, bad JSON, bad arguments */
    CURVEAVG_ERR_DEGENERATE = 2, /* torsion polynomial identically zero */
    CURVEAVG_ERR_VERIFY = 3,     /* a verification criterion failed */
    CURVEAVG_ERR_INTERNAL = 4
};

typedef struct curveavg_curve curveavg_curve;
typedef struct curveavg_decomposition curveavg_decomposition;

/* ---- curve handles ---- */

/* spec_json: {"dim": d, "components": [[c0, c1, ...], ...]} with integer or
 * exact-string coefficients, ascending degree. */
curveavg_status curveavg_curve_from_json(const char* spec_json, curveavg_curve** out);
void curveavg_curve_destroy(curveavg_curve* curve);
curveavg_status curveavg_curve_dim(const curveavg_curve* curve, int32_t* out);

/* torsion polynomial L_P evaluated at t */
curveavg_status curveavg_torsion_eval(const curveavg_curve* curve, double t, double* out);
/* det(P'(t_1) ... P'(t_d)); pts must hold dim entries */
curveavg_status curveavg_jacobian_det(const curveavg_curve* curve, const double* pts, size_t n,
                                      double* out);
/* |J| / (prod |L|^{1/d} prod |t_i - t_j|); fails on degenerate tuples */
curveavg_status curveavg_geom_ratio(const curveavg_curve* curve, const double* pts, size_t n,
                                    double* out);
/* affine arclength mass of [lo, hi] */
curveavg_status curveavg_nu_mass(const curveavg_curve* curve, double lo, double hi, double* out);

/* ---- decomposition handles ---- */

curveavg_status curveavg_decompose(const curveavg_curve* curve, double window_lo,
                                   double window_hi, double kappa_target,
                                   curveavg_decomposition** out);
void curveavg_decomposition_destroy(curveavg_decomposition* dec);
size_t curveavg_decomposition_size(const curveavg_decomposition* dec);
curveavg_status curveavg_decomposition_interval(const curveavg_decomposition* dec, size_t index,
                                                double* lo, double* hi, double* b, int32_t* k,
                                                double* amplitude, double* kappa);
curveavg_status curveavg_decomposition_to_json(const curveavg_decomposition* dec, char** out);

/* ---- command entry points (the CLI surface) ---- */

curveavg_status curveavg_cmd_decompose(const char* config_json, const char* out_dir);
curveavg_status curveavg_cmd_verify(const char* config_json, const char* out_dir);
curveavg_status curveavg_cmd_experiment(const char* config_json, const char* which,
                                        const char* out_dir);

/* ---- utilities ---- */

void curveavg_string_free(char* s);
/* thread-local message for the most recent failing call; never NULL */
const char* curveavg_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* CURVEAVG_H */
