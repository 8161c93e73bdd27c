#ifndef CURVEAVG_ERRORS_HPP
#define CURVEAVG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace curveavg {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroPolynomialError : Error {
    ZeroPolynomialError() : Error("operation requires a nonzero polynomial") {}
};

struct DegenerateCurveError : Error {
    DegenerateCurveError() : Error("torsion polynomial vanishes identically") {}
};

struct SplitBudgetExceededError : Error {
    explicit SplitBudgetExceededError(const std::string& msg) : Error(msg) {}
};

struct DegeneratePointError : Error {
    explicit DegeneratePointError(const std::string& msg) : Error(msg) {}
};

struct OutOfIntervalError : Error {
    explicit OutOfIntervalError(const std::string& msg) : Error(msg) {}
};

struct EmptyPairingError : Error {
    EmptyPairingError() : Error("operator pairing is zero; nothing to refine") {}
};

struct FloorViolationError : Error {
    explicit FloorViolationError(const std::string& msg) : Error(msg) {}
};

struct OverlapDetectedError : Error {
    explicit OverlapDetectedError(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace curveavg

#endif
