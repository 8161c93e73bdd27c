#include "curveavg/quadrature.hpp"

#include <algorithm>
#include <queue>

namespace curveavg {

namespace {

// Kronrod-15 abscissae on [-1,1] (symmetric) with Kronrod and Gauss-7 weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

}  // namespace

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double result_gauss = fc * kWg[3];
    double result_kronrod = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double f1 = f(c - x), f2 = f(c + x);
        result_kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) result_gauss += kWg[j / 2] * (f1 + f2);
    }
    GkResult r;
    r.value = result_kronrod * h;
    // conservative estimator: |K15 - G7| on the panel
    r.error = std::abs((result_kronrod - result_gauss) * h);
    return r;
}

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol, int max_panels) {
    if (a == b) return 0.0;
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    std::priority_queue<Panel> queue;
    GkResult first = gk15(f, a, b);
    queue.push({a, b, first.value, first.error});
    double total = first.value, total_err = first.error;
    int panels = 1;
    while (panels < max_panels) {
        double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= target) break;
        Panel worst = queue.top();
        queue.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // panel at double resolution
            total_err -= worst.error;
            continue;
        }
        GkResult left = gk15(f, worst.a, mid);
        GkResult right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push({worst.a, mid, left.value, left.error});
        queue.push({mid, worst.b, right.value, right.error});
        ++panels;
    }
    return total;
}

double adaptive_quadrature_pieces(const std::function<double(double)>& f,
                                  const std::vector<double>& breakpoints, double rel_tol,
                                  double abs_tol, int max_panels_per_piece) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
        acc += adaptive_quadrature(f, breakpoints[i], breakpoints[i + 1], rel_tol, abs_tol,
                                   max_panels_per_piece);
    return acc;
}

}  // namespace curveavg
