#ifndef CURVEAVG_RUNNER_HPP
#define CURVEAVG_RUNNER_HPP

#include <string>

namespace curveavg {

// Exit statuses shared by the C API and the CLI.
inline constexpr int kStatusOk = 0;
inline constexpr int kStatusConfig = 1;
inline constexpr int kStatusDegenerate = 2;
inline constexpr int kStatusVerifyFailed = 3;
inline constexpr int kStatusInternal = 4;

/// Config document (JSON text) -> decomposition.json under out_dir.
int run_decompose(const std::string& config_json, const std::string& out_dir);

/// Geometric-inequality, injectivity, d = 2 identity and refinement suites
/// for the configured curve; reports under out_dir; 0 iff every check passes.
int run_verify(const std::string& config_json, const std::string& out_dir);

/// which: hull | scaling | sin | sharpness | uniform.
int run_experiment(const std::string& config_json, const std::string& which,
                   const std::string& out_dir);

/// Message describing the most recent failure status from this thread.
const std::string& last_run_error();

}  // namespace curveavg

#endif
