#include "curveavg/curveavg.h"

#include "curveavg/decomp.hpp"
#include "curveavg/errors.hpp"
#include "curveavg/interval_union.hpp"
#include "curveavg/json_io.hpp"
#include "curveavg/measure.hpp"
#include "curveavg/runner.hpp"

#include <cstring>
#include <string>

using namespace curveavg;

struct curveavg_curve {
    CurvePoly curve;
};

struct curveavg_decomposition {
    Decomposition dec;
};

namespace {

thread_local std::string g_error = "";

curveavg_status to_status(const std::exception& e) {
    g_error = e.what();
    if (dynamic_cast<const ConfigError*>(&e)) return CURVEAVG_ERR_CONFIG;
    if (dynamic_cast<const DegenerateCurveError*>(&e)) return CURVEAVG_ERR_DEGENERATE;
    return CURVEAVG_ERR_INTERNAL;
}

template <typename Fn>
curveavg_status guard_call(Fn&& fn) {
    try {
        g_error.clear();
        return fn();
    } catch (const std::exception& e) {
        return to_status(e);
    } catch (...) {
        g_error = "unknown error";
        return CURVEAVG_ERR_INTERNAL;
    }
}

curveavg_status require(bool cond, const char* msg) {
    if (cond) return CURVEAVG_OK;
    g_error = msg;
    return CURVEAVG_ERR_CONFIG;
}

}  // namespace

extern "C" {

curveavg_status curveavg_curve_from_json(const char* spec_json, curveavg_curve** out) {
    if (curveavg_status s = require(spec_json && out, "null argument")) return s;
    return guard_call([&]() {
        *out = new curveavg_curve{curve_from_json(parse_json(spec_json))};
        return CURVEAVG_OK;
    });
}

void curveavg_curve_destroy(curveavg_curve* curve) { delete curve; }

curveavg_status curveavg_curve_dim(const curveavg_curve* curve, int32_t* out) {
    if (curveavg_status s = require(curve && out, "null argument")) return s;
    *out = curve->curve.dim();
    return CURVEAVG_OK;
}

curveavg_status curveavg_torsion_eval(const curveavg_curve* curve, double t, double* out) {
    if (curveavg_status s = require(curve && out, "null argument")) return s;
    return guard_call([&]() {
        *out = torsion_det(curve->curve).eval(t);
        return CURVEAVG_OK;
    });
}

curveavg_status curveavg_jacobian_det(const curveavg_curve* curve, const double* pts, size_t n,
                                      double* out) {
    if (curveavg_status s = require(curve && pts && out, "null argument")) return s;
    return guard_call([&]() {
        std::vector<double> v(pts, pts + n);
        *out = jacobian_det(curve->curve, v);
        return CURVEAVG_OK;
    });
}

curveavg_status curveavg_geom_ratio(const curveavg_curve* curve, const double* pts, size_t n,
                                    double* out) {
    if (curveavg_status s = require(curve && pts && out, "null argument")) return s;
    return guard_call([&]() {
        std::vector<double> v(pts, pts + n);
        *out = geom_ratio(curve->curve, v);
        return CURVEAVG_OK;
    });
}

curveavg_status curveavg_nu_mass(const curveavg_curve* curve, double lo, double hi, double* out) {
    if (curveavg_status s = require(curve && out && lo <= hi, "bad interval")) return s;
    return guard_call([&]() {
        *out = nu_mass(curve->curve, IntervalUnion(lo, hi));
        return CURVEAVG_OK;
    });
}

curveavg_status curveavg_decompose(const curveavg_curve* curve, double window_lo,
                                   double window_hi, double kappa_target,
                                   curveavg_decomposition** out) {
    if (curveavg_status s = require(curve && out, "null argument")) return s;
    return guard_call([&]() {
        DecomposeConfig cfg;
        if (kappa_target > 1.0) cfg.kappa_target = kappa_target;
        *out = new curveavg_decomposition{
            decompose(curve->curve, window_lo, window_hi, cfg)};
        return CURVEAVG_OK;
    });
}

void curveavg_decomposition_destroy(curveavg_decomposition* dec) { delete dec; }

size_t curveavg_decomposition_size(const curveavg_decomposition* dec) {
    return dec ? dec->dec.intervals.size() : 0;
}

curveavg_status curveavg_decomposition_interval(const curveavg_decomposition* dec, size_t index,
                                                double* lo, double* hi, double* b, int32_t* k,
                                                double* amplitude, double* kappa) {
    if (curveavg_status s = require(dec, "null handle")) return s;
    if (curveavg_status s = require(index < dec->dec.intervals.size(), "index out of range"))
        return s;
    const CenteredInterval& ci = dec->dec.intervals[index];
    if (lo) *lo = ci.lo;
    if (hi) *hi = ci.hi;
    if (b) *b = ci.b;
    if (k) *k = ci.k;
    if (amplitude) *amplitude = ci.A;
    if (kappa) *kappa = ci.kappa;
    return CURVEAVG_OK;
}

curveavg_status curveavg_decomposition_to_json(const curveavg_decomposition* dec, char** out) {
    if (curveavg_status s = require(dec && out, "null argument")) return s;
    return guard_call([&]() {
        std::string text = decomposition_to_json(dec->dec);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out = buf;
        return CURVEAVG_OK;
    });
}

curveavg_status curveavg_cmd_decompose(const char* config_json, const char* out_dir) {
    if (curveavg_status s = require(config_json && out_dir, "null argument")) return s;
    int rc = run_decompose(config_json, out_dir);
    if (rc != kStatusOk) g_error = last_run_error();
    return rc;
}

curveavg_status curveavg_cmd_verify(const char* config_json, const char* out_dir) {
    if (curveavg_status s = require(config_json && out_dir, "null argument")) return s;
    int rc = run_verify(config_json, out_dir);
    if (rc != kStatusOk) g_error = last_run_error();
    return rc;
}

curveavg_status curveavg_cmd_experiment(const char* config_json, const char* which,
                                        const char* out_dir) {
    if (curveavg_status s = require(config_json && which && out_dir, "null argument")) return s;
    int rc = run_experiment(config_json, which, out_dir);
    if (rc != kStatusOk) g_error = last_run_error();
    return rc;
}

void curveavg_string_free(char* s) { delete[] s; }

const char* curveavg_last_error(void) { return g_error.c_str(); }

}  // extern "C"
