#include "curveavg/json_io.hpp"

#include "curveavg/errors.hpp"

#include <cstdio>

namespace curveavg {

Json curve_to_json(const CurvePoly& P) {
    Json j;
    j["dim"] = P.dim();
    Json comps = Json::array();
    for (const auto& p : P.components()) {
        Json coeffs = Json::array();
        for (const auto& c : p.coeffs()) coeffs.push_back(rational_str(c));
        comps.push_back(coeffs);
    }
    j["components"] = comps;
    return j;
}

CurvePoly curve_from_json(const Json& j) {
    if (!j.contains("components")) throw ConfigError("curve spec missing 'components'");
    const Json& comps = j["components"];
    if (!comps.is_array() || comps.empty()) throw ConfigError("curve components must be a list");
    int dim = j.contains("dim") ? j["dim"].get<int>() : static_cast<int>(comps.size());
    std::vector<Polynomial> polys;
    for (const auto& clist : comps) {
        if (!clist.is_array()) throw ConfigError("coefficient list expected");
        std::vector<Rational> coeffs;
        for (const auto& c : clist) {
            if (c.is_number_integer())
                coeffs.emplace_back(c.get<long long>());
            else if (c.is_string())
                coeffs.push_back(parse_rational(c.get<std::string>()));
            else
                throw ConfigError("coefficients must be integers or exact strings");
        }
        polys.emplace_back(std::move(coeffs));
    }
    return CurvePoly(dim, std::move(polys));
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace curveavg
