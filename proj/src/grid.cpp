#include "curveavg/grid.hpp"

#include "curveavg/errors.hpp"
#include "curveavg/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace curveavg {

Box::Box(std::vector<double> lo_, std::vector<double> hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.size() != hi.size() || lo.empty()) throw ConfigError("box axis mismatch");
    for (size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < hi[i])) throw ConfigError("box requires lo < hi per axis");
}

Box Box::cube(int dim, double half_width) {
    return Box(std::vector<double>(dim, -half_width), std::vector<double>(dim, half_width));
}

Box Box::nonisotropic(int dim, double delta) {
    std::vector<double> lo(dim), hi(dim);
    double w = 1.0;
    for (int j = 0; j < dim; ++j) {
        w *= delta;  // delta^{j+1}
        lo[j] = -w;
        hi[j] = w;
    }
    return Box(std::move(lo), std::move(hi));
}

double Box::volume() const {
    double v = 1.0;
    for (size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
}

Box Box::translate(const std::vector<double>& shift) const {
    Box b = *this;
    for (size_t i = 0; i < lo.size(); ++i) {
        b.lo[i] += shift[i];
        b.hi[i] += shift[i];
    }
    return b;
}

bool Box::contains(const std::vector<double>& x) const {
    for (size_t i = 0; i < lo.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

bool Box::intersects(const Box& o) const {
    for (size_t i = 0; i < lo.size(); ++i)
        if (hi[i] <= o.lo[i] || o.hi[i] <= lo[i]) return false;
    return true;
}

GridFunction GridFunction::zeros(const Box& box, const std::vector<int>& resolution) {
    if (static_cast<int>(resolution.size()) != box.dim())
        throw ConfigError("grid resolution rank mismatch");
    size_t n = 1;
    for (int r : resolution) {
        if (r < 1) throw ConfigError("grid resolution must be positive");
        n *= static_cast<size_t>(r);
    }
    GridFunction f;
    f.dim = box.dim();
    f.box = box;
    f.resolution = resolution;
    f.values.assign(n, 0.0);
    return f;
}

double GridFunction::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= (box.hi[a] - box.lo[a]) / resolution[a];
    return v;
}

std::vector<double> GridFunction::cell_center(size_t flat_index) const {
    std::vector<double> x(dim);
    size_t rem = flat_index;
    for (int a = dim - 1; a >= 0; --a) {
        size_t idx = rem % static_cast<size_t>(resolution[a]);
        rem /= static_cast<size_t>(resolution[a]);
        double h = (box.hi[a] - box.lo[a]) / resolution[a];
        x[a] = box.lo[a] + (static_cast<double>(idx) + 0.5) * h;
    }
    return x;
}

double GridFunction::value_at(const std::vector<double>& x) const {
    size_t flat = 0;
    for (int a = 0; a < dim; ++a) {
        double h = (box.hi[a] - box.lo[a]) / resolution[a];
        double rel = (x[a] - box.lo[a]) / h;
        if (rel < 0.0 || rel >= static_cast<double>(resolution[a])) return 0.0;
        flat = flat * static_cast<size_t>(resolution[a]) + static_cast<size_t>(rel);
    }
    return values[flat];
}

void GridFunction::fill_indicator(const Box& region) {
    for (size_t i = 0; i < values.size(); ++i)
        values[i] = region.contains(cell_center(i)) ? 1.0 : 0.0;
}

double lp_norm(const GridFunction& f, double p) {
    long double acc = 0.0L;
    const double vol = f.cell_volume();
    for (double v : f.values) acc += std::pow(std::abs(v), p);
    return static_cast<double>(std::pow(acc * vol, 1.0L / p));
}

double lorentz_norm(const GridFunction& f, double p, double r) {
    std::vector<double> vals;
    vals.reserve(f.values.size());
    for (double v : f.values)
        if (v != 0.0) vals.push_back(std::abs(v));
    if (vals.empty()) return 0.0;
    std::sort(vals.begin(), vals.end(), std::greater<double>());
    const double vol = f.cell_volume();

    if (std::isinf(r)) {
        double best = 0.0;
        for (size_t j = 0; j < vals.size(); ++j) {
            double t = static_cast<double>(j + 1) * vol;  // cumulative measure
            best = std::max(best, std::pow(t, 1.0 / p) * vals[j]);
        }
        return best;
    }
    long double acc = 0.0L;
    long double prev_pow = 0.0L;
    for (size_t j = 0; j < vals.size(); ++j) {
        long double t = static_cast<long double>(j + 1) * vol;
        long double tp = std::pow(t, static_cast<long double>(r / p));
        acc += std::pow(static_cast<long double>(vals[j]), static_cast<long double>(r)) *
               (p / r) * (tp - prev_pow);
        prev_pow = tp;
    }
    return static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(r)));
}

double lorentz_norm_indicator(double v, double m, double p, double r) {
    if (std::isinf(r)) return std::pow(m, 1.0 / p) * v;
    return std::pow(p / r, 1.0 / r) * std::pow(m, 1.0 / p) * v;
}

void write_grid(const GridFunction& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path + " for writing");
    std::ostringstream header;
    header << f.dim;
    for (int a = 0; a < f.dim; ++a)
        header << " " << format_g17(f.box.lo[a]) << " " << format_g17(f.box.hi[a]);
    for (int a = 0; a < f.dim; ++a) header << " " << f.resolution[a];
    header << "\n";
    os << header.str();
    static_assert(std::endian::native == std::endian::little,
                  "payload is written little-endian");
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

GridFunction read_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    std::string header;
    std::getline(is, header);
    std::istringstream hs(header);
    int dim = 0;
    hs >> dim;
    if (dim < 1 || dim > 3) throw Error("bad grid header in " + path);
    std::vector<double> lo(dim), hi(dim);
    for (int a = 0; a < dim; ++a) hs >> lo[a] >> hi[a];
    std::vector<int> res(dim);
    for (int a = 0; a < dim; ++a) hs >> res[a];
    GridFunction f = GridFunction::zeros(Box(lo, hi), res);
    is.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!is) throw Error("truncated grid payload in " + path);
    return f;
}

std::string grid_sidecar_json(const GridFunction& f, const std::string& config_hash) {
    Json j;
    j["dim"] = f.dim;
    j["box_lo"] = f.box.lo;
    j["box_hi"] = f.box.hi;
    j["resolution"] = f.resolution;
    j["cells"] = f.values.size();
    j["payload"] = "row-major float64 little-endian";
    std::string out;
    if (!config_hash.empty()) out += "// config_hash=" + config_hash + "\n";
    return out + j.dump(2) + "\n";
}

void write_grid_csv(const GridFunction& f, const std::string& path,
                    const std::string& config_hash) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    if (!config_hash.empty()) os << "# config_hash=" << config_hash << "\n";
    os << "# ";
    for (int a = 0; a < f.dim; ++a) os << "x" << a + 1 << ",";
    os << "value\n";
    for (size_t i = 0; i < f.values.size(); ++i) {
        auto c = f.cell_center(i);
        for (int a = 0; a < f.dim; ++a) os << format_g17(c[a]) << ",";
        os << format_g17(f.values[i]) << "\n";
    }
}

}  // namespace curveavg
