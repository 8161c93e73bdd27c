#ifndef CURVEAVG_JSON_IO_HPP
#define CURVEAVG_JSON_IO_HPP

#include "curveavg/curve.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>

namespace curveavg {

using Json = nlohmann::ordered_json;

/// Curve wire format: {"dim": d, "components": [[c0, c1, ...], ...]} where
/// coefficients are integers or strings read as exact rationals, ascending
/// degree.
Json curve_to_json(const CurvePoly& P);
CurvePoly curve_from_json(const Json& j);

/// Parses tolerating // comment lines (outputs carry a hash header comment).
Json parse_json(const std::string& text);

uint64_t fnv1a64(const std::string& data);
std::string hash_hex(uint64_t h);

/// Fixed 17-significant-digit float formatting for CSV/report rows, so reruns
/// with identical config and seed are byte-identical.
std::string format_g17(double x);

}  // namespace curveavg

#endif
