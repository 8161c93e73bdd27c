#ifndef CURVEAVG_QUADRATURE_HPP
#define CURVEAVG_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <vector>

namespace curveavg {

/// Gauss-Kronrod 7-15 panel estimate with embedded error.
struct GkResult {
    double value = 0.0;
    double error = 0.0;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b);

/// Adaptive bisection on a worst-panel-first queue. Integrable endpoint
/// behaviour (|t-r|^e kinks) is fine as long as callers pre-split at the
/// breakpoints so singular points sit on panel boundaries.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, double abs_tol = 1e-14,
                           int max_panels = 4000);

/// Same, over a list of pre-split smooth pieces.
double adaptive_quadrature_pieces(const std::function<double(double)>& f,
                                  const std::vector<double>& breakpoints, double rel_tol = 1e-10,
                                  double abs_tol = 1e-14, int max_panels_per_piece = 4000);

}  // namespace curveavg

#endif
