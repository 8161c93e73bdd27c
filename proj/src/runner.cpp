#include "curveavg/runner.hpp"

#include "curveavg/decomp.hpp"
#include "curveavg/errors.hpp"
#include "curveavg/experiments.hpp"
#include "curveavg/geom.hpp"
#include "curveavg/json_io.hpp"
#include "curveavg/measure.hpp"
#include "curveavg/refine.hpp"
#include "curveavg/rng.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>

namespace curveavg {

namespace {

thread_local std::string g_last_error;

struct RunConfig {
    CurvePoly curve;
    double window_lo, window_hi;
    DecomposeConfig decomp;
    uint64_t seed = 1;
    long budget = 100000;
    double c0_floor = 1e-6;
    double identity_tol = 1e-8;
    Json raw;
    std::string hash;
};

RunConfig parse_config(const std::string& text) {
    Json j = parse_json(text);
    if (!j.contains("curve")) throw ConfigError("config is missing 'curve'");
    CurvePoly curve = curve_from_json(j["curve"]);

    RunConfig cfg{curve, 0.0, 0.0, {}, 1, 100000, 1e-6, 1e-8, j, hash_hex(fnv1a64(text))};
    if (j.contains("window")) {
        cfg.window_lo = j["window"][0].get<double>();
        cfg.window_hi = j["window"][1].get<double>();
        if (!(cfg.window_lo < cfg.window_hi) || !std::isfinite(cfg.window_lo) ||
            !std::isfinite(cfg.window_hi))
            throw ConfigError("window must be a finite interval");
    } else {
        double R = default_window_radius(curve);
        cfg.window_lo = -R;
        cfg.window_hi = R;
    }
    if (j.contains("kappa_target")) cfg.decomp.kappa_target = j["kappa_target"].get<double>();
    if (cfg.decomp.kappa_target <= 1.0) throw ConfigError("kappa_target must exceed 1");
    if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("budget")) cfg.budget = j["budget"].get<long>();
    if (j.contains("c0_floor")) cfg.c0_floor = j["c0_floor"].get<double>();
    return cfg;
}

std::ofstream open_out(const std::string& out_dir, const std::string& name) {
    std::filesystem::create_directories(out_dir);
    std::ofstream os(std::filesystem::path(out_dir) / name);
    if (!os) throw Error("cannot open output file " + name);
    return os;
}

void write_text(const std::string& out_dir, const std::string& name, const std::string& body) {
    auto os = open_out(out_dir, name);
    os << body;
}

std::string sweep_csv(const SweepReport& rep, const std::string& hash) {
    std::string out = "# config_hash=" + hash + "\n";
    out += "parameter,lhs,rhs,ratio\n";
    for (const auto& r : rep.rows)
        out += format_g17(r.parameter) + "," + format_g17(r.lhs) + "," + format_g17(r.rhs) + "," +
               format_g17(r.ratio) + "\n";
    return out;
}

std::string sweep_plot(const SweepReport& rep, const std::string& hash) {
    std::string out = "# config_hash=" + hash + "\n# series: " + rep.name + " (x = parameter, y = ratio)\n";
    for (const auto& r : rep.rows)
        out += format_g17(r.parameter) + " " + format_g17(r.ratio) + "\n";
    return out;
}

Json sweep_json(const SweepReport& rep) {
    Json j;
    j["name"] = rep.name;
    j["slope"] = rep.slope;
    j["intercept"] = rep.intercept;
    j["r_squared"] = rep.r_squared;
    j["slope_valid"] = rep.slope_valid;
    j["pass"] = rep.pass;
    for (const auto& [k, v] : rep.notes) j["notes"][k] = v;
    Json rows = Json::array();
    for (const auto& r : rep.rows) rows.push_back({r.parameter, r.lhs, r.rhs, r.ratio});
    j["rows"] = rows;
    return j;
}

int guard(const std::function<int()>& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const ConfigError& e) {
        g_last_error = e.what();
        return kStatusConfig;
    } catch (const DegenerateCurveError& e) {
        g_last_error = e.what();
        return kStatusDegenerate;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return kStatusInternal;
    }
}

}  // namespace

const std::string& last_run_error() { return g_last_error; }

int run_decompose(const std::string& config_json, const std::string& out_dir) {
    return guard([&]() {
        RunConfig cfg = parse_config(config_json);
        Decomposition dec = decompose(cfg.curve, cfg.window_lo, cfg.window_hi, cfg.decomp);
        write_text(out_dir, "decomposition.json", decomposition_to_json(dec, cfg.hash));
        return kStatusOk;
    });
}

int run_verify(const std::string& config_json, const std::string& out_dir) {
    return guard([&]() {
        RunConfig cfg = parse_config(config_json);
        const int d = cfg.curve.dim();
        Decomposition dec = decompose(cfg.curve, cfg.window_lo, cfg.window_hi, cfg.decomp);

        bool all_pass = true;
        Json report;
        report["config_hash"] = cfg.hash;
        report["intervals"] = Json::array();

        std::string geom_csv = "# config_hash=" + cfg.hash + "\ninterval_id,C_hat";
        for (int a = 0; a < d; ++a) geom_csv += ",argmin_" + std::to_string(a + 1);
        geom_csv += ",samples,violations\n";
        std::string inj_csv =
            "# config_hash=" + cfg.hash + "\ninterval_id,samples,min_image_gap,collisions\n";
        std::string id_csv = "# config_hash=" + cfg.hash + "\ninterval_id,s,t,residual\n";

        Rng rng(cfg.seed);
        for (size_t i = 0; i < dec.intervals.size(); ++i) {
            const CenteredInterval& ci = dec.intervals[i];
            Json ji;
            ji["lo"] = ci.lo;
            ji["hi"] = ci.hi;

            GeomReport gr = geom_constant_estimate(cfg.curve, ci, cfg.budget, cfg.seed + i);
            ji["C_hat"] = gr.c_hat;
            ji["geom_pass"] = gr.pass();
            all_pass = all_pass && gr.pass();
            geom_csv += std::to_string(i) + "," + format_g17(gr.c_hat);
            for (double a : gr.argmin) geom_csv += "," + format_g17(a);
            geom_csv +=
                "," + std::to_string(gr.samples) + "," + std::to_string(gr.violations) + "\n";

            InjectivityReport ir = injectivity_probe(cfg.curve, ci, std::min<long>(cfg.budget, 20000),
                                                     1e-6, 1e-9, cfg.seed + 31 * i);
            ji["collisions"] = ir.collision_pairs.size();
            ji["injectivity_pass"] = ir.pass();
            all_pass = all_pass && ir.pass();
            inj_csv += std::to_string(i) + "," + std::to_string(ir.samples) + "," +
                       format_g17(ir.min_image_gap) + "," + std::to_string(ir.collision_pairs.size()) +
                       "\n";

            if (d == 2) {
                double worst = 0.0;
                for (int probe = 0; probe < 20; ++probe) {
                    double s = ci.lo + (ci.hi - ci.lo) * (0.1 + 0.8 * rng.uniform());
                    double t = ci.lo + (ci.hi - ci.lo) * (0.1 + 0.8 * rng.uniform());
                    double res = d2_jacobian_identity_residual(cfg.curve, ci.lo, ci.hi, s, t);
                    worst = std::max(worst, res);
                    id_csv += std::to_string(i) + "," + format_g17(s) + "," + format_g17(t) + "," +
                              format_g17(res) + "\n";
                }
                ji["identity_residual_max"] = worst;
                ji["identity_pass"] = worst <= cfg.identity_tol;
                all_pass = all_pass && worst <= cfg.identity_tol;
            }
            report["intervals"].push_back(ji);
        }

        // refinement + iterated-bound suite on the widest interval
        size_t widest = 0;
        for (size_t i = 1; i < dec.intervals.size(); ++i)
            if (dec.intervals[i].length() > dec.intervals[widest].length()) widest = i;
        const CenteredInterval& ci = dec.intervals[widest];
        const double e_mu = ci.k * (d == 3 ? 1.0 / 6.0 : 1.0 / 3.0);

        Box base = Box::cube(d, 0.5);
        std::vector<int> res(d, d == 3 ? 4 : 8);
        DiscretizedOperator dop = discretize_operator(cfg.curve, ci, e_mu, base, res, base, res);
        Json refine_report;
        refine_report["config_hash"] = cfg.hash;
        try {
            StructuredSets ss = structured_params(dop, d);
            IteratedBoundInput in;
            in.ci = ci;
            in.d = d;
            // recover alpha/beta from the recorded floors
            if (d == 3) {
                in.alpha = ss.floor_S * 8.0;
                in.beta = ss.floor_T * 4.0;
            } else {
                in.beta = ss.floor_S * 4.0;
                in.alpha = ss.floor_T * 2.0;
            }
            in.S = ss.S;
            in.sampled = &ss;
            BoundCheckResult bc = iterated_bound_check(in);
            refine_report["mu_S"] = ss.mu_S;
            refine_report["floor_S"] = ss.floor_S;
            refine_report["bound_lhs"] = bc.lhs;
            refine_report["bound_rhs"] = bc.rhs;
            refine_report["bound_ratio"] = bc.ratio;
            refine_report["bound_pass"] = bc.ratio >= cfg.c0_floor;
            all_pass = all_pass && bc.ratio >= cfg.c0_floor;
        } catch (const FloorViolationError& e) {
            refine_report["floor_violation"] = e.what();
            all_pass = false;
        }

        report["all_pass"] = all_pass;
        write_text(out_dir, "verify_report.json",
                   "// config_hash=" + cfg.hash + "\n" + report.dump(2) + "\n");
        write_text(out_dir, "geom_report.csv", geom_csv);
        write_text(out_dir, "injectivity_report.csv", inj_csv);
        if (d == 2) write_text(out_dir, "identity_report.csv", id_csv);
        write_text(out_dir, "refine_report.json",
                   "// config_hash=" + cfg.hash + "\n" + refine_report.dump(2) + "\n");
        if (!all_pass) {
            g_last_error = "one or more verification checks failed (see verify_report.json)";
            return kStatusVerifyFailed;
        }
        return kStatusOk;
    });
}

int run_experiment(const std::string& config_json, const std::string& which,
                   const std::string& out_dir) {
    return guard([&]() -> int {
        RunConfig cfg = parse_config(config_json);
        const Json& raw = cfg.raw;
        const int d = cfg.curve.dim();

        auto emit = [&](const SweepReport& rep, const std::string& stem) {
            write_text(out_dir, stem + ".csv", sweep_csv(rep, cfg.hash));
            write_text(out_dir, stem + ".plot", sweep_plot(rep, cfg.hash));
            write_text(out_dir, stem + "_summary.json",
                       "// config_hash=" + cfg.hash + "\n" + sweep_json(rep).dump(2) + "\n");
        };

        if (which == "hull") {
            HullVertices v = hull_vertices(d);
            std::string csv = "# config_hash=" + cfg.hash + "\nvertex,inv_p,inv_q\n";
            csv += "A," + rational_str(v.A.first) + "," + rational_str(v.A.second) + "\n";
            csv += "B," + rational_str(v.B.first) + "," + rational_str(v.B.second) + "\n";
            write_text(out_dir, "hull.csv", csv);
            Json j;
            j["A"] = {rational_str(v.A.first), rational_str(v.A.second)};
            j["B"] = {rational_str(v.B.first), rational_str(v.B.second)};
            j["self_dual"] = dual_exponent(v.A) == std::pair<Rational, Rational>(v.B);
            write_text(out_dir, "hull_summary.json",
                       "// config_hash=" + cfg.hash + "\n" + j.dump(2) + "\n");
            return kStatusOk;
        }
        if (which == "scaling") {
            double p = raw.value("p", d == 2 ? 1.5 : 2.0);
            std::vector<double> deltas;
            for (int i = 1; i <= 6; ++i) deltas.push_back(std::pow(2.0, -i));
            SweepReport rep = scaling_extremizer_sweep(d, p, deltas);
            emit(rep, "scaling");
            return kStatusOk;
        }
        if (which == "sin") {
            int k = raw.value("k", 2);
            std::vector<double> deltas;
            for (int i = 1; i <= 6; ++i) deltas.push_back(std::pow(2.0, -i));
            SweepReport rep = sin_obstruction_probe(k, deltas);
            emit(rep, "flat_obstruction");
            return kStatusOk;
        }
        if (which == "sharpness") {
            double r = raw.contains("r") && raw["r"].is_string()
                           ? std::numeric_limits<double>::infinity()
                           : raw.value("r", (d + 1) / 2.0);
            SharpnessReport rep = sharpness_counterexample(d, {8, 16, 32, 64}, r);
            emit(rep.f_norm, "sharpness_f");
            emit(rep.lower_norm, "sharpness_lower");
            Json j;
            j["expected_f_slope"] = rep.expected_f_slope;
            j["expected_lower_slope"] = rep.expected_lower_slope;
            j["fitted_f_slope"] = rep.f_norm.slope;
            j["fitted_lower_slope"] = rep.lower_norm.slope;
            j["fit_r_min"] = rep.fit_r_min;
            j["constraint_r_min"] = rational_str(rep.constraint_r_min);
            j["constraint"] = "r >= (d+1)/2";
            write_text(out_dir, "sharpness_summary.json",
                       "// config_hash=" + cfg.hash + "\n" + j.dump(2) + "\n");
            return kStatusOk;
        }
        if (which == "uniform") {
            int degree_bound = raw.value("degree_bound", 4);
            int num_curves = raw.value("num_curves", 50);
            UniformSweepResult res = uniform_family_sweep(d, degree_bound, num_curves, cfg.seed);
            res.report.notes.emplace_back("baseline", format_g17(res.baseline));
            res.report.notes.emplace_back("max_ratio", format_g17(res.max_ratio));
            res.report.notes.emplace_back("grade", "evidence, not proof");
            emit(res.report, "uniformity");
            return kStatusOk;
        }
        g_last_error = "unknown experiment '" + which + "'";
        return kStatusConfig;
    });
}

}  // namespace curveavg
