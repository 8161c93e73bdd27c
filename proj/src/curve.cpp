#include "curveavg/curve.hpp"

#include "curveavg/errors.hpp"

#include <cmath>

namespace curveavg {

CurvePoly::CurvePoly(int dim, std::vector<Polynomial> components)
    : dim_(dim), components_(std::move(components)) {
    if (dim_ != 2 && dim_ != 3) throw ConfigError("curve dimension must be 2 or 3");
    if (static_cast<int>(components_.size()) != dim_)
        throw ConfigError("curve needs exactly d components");
    int maxdeg = -1;
    for (const auto& p : components_) maxdeg = std::max(maxdeg, p.degree());
    if (maxdeg < 1) throw ConfigError("curve must be non-constant");
    if (maxdeg > kMaxComponentDegree) throw ConfigError("component degree exceeds cap 16");
}

int CurvePoly::max_degree() const {
    int maxdeg = -1;
    for (const auto& p : components_) maxdeg = std::max(maxdeg, p.degree());
    return maxdeg;
}

std::vector<double> CurvePoly::point(double t) const {
    std::vector<double> x(dim_);
    for (int i = 0; i < dim_; ++i) x[i] = components_[i].eval(t);
    return x;
}

std::vector<double> CurvePoly::derivative_point(double t) const {
    std::vector<double> x(dim_);
    for (int i = 0; i < dim_; ++i) x[i] = components_[i].derivative().eval(t);
    return x;
}

namespace {

// det of a d x d matrix of polynomials, cofactor expansion (d <= 3).
Polynomial poly_det(const std::vector<std::vector<Polynomial>>& m) {
    size_t d = m.size();
    if (d == 1) return m[0][0];
    if (d == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Polynomial acc;
    for (size_t j = 0; j < 3; ++j) {
        std::vector<std::vector<Polynomial>> minor(2, std::vector<Polynomial>(2));
        for (size_t r = 1; r < 3; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < 3; ++c) {
                if (c == j) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        Polynomial term = m[0][j] * poly_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// entry (i, j) = P_i^{(j+1)}(t), the derivative matrix of the curve
std::vector<std::vector<Polynomial>> derivative_matrix(const CurvePoly& P, int size) {
    std::vector<std::vector<Polynomial>> m(size, std::vector<Polynomial>(size));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) m[i][j] = P.component(i).derivative(j + 1);
    return m;
}

template <typename T>
T det_columns(const std::vector<std::vector<T>>& col, int d) {
    if (d == 2) return col[0][0] * col[1][1] - col[0][1] * col[1][0];
    return col[0][0] * (col[1][1] * col[2][2] - col[1][2] * col[2][1]) -
           col[1][0] * (col[0][1] * col[2][2] - col[0][2] * col[2][1]) +
           col[2][0] * (col[0][1] * col[1][2] - col[0][2] * col[1][1]);
}

}  // namespace

Polynomial torsion_det(const CurvePoly& P) { return poly_det(derivative_matrix(P, P.dim())); }

Polynomial leading_minor(const CurvePoly& P, int j) {
    if (j < 1 || j > P.dim()) throw ConfigError("minor order out of range");
    auto m = derivative_matrix(P, P.dim());
    std::vector<std::vector<Polynomial>> top(j, std::vector<Polynomial>(j));
    for (int r = 0; r < j; ++r)
        for (int c = 0; c < j; ++c) top[r][c] = m[r][c];
    return poly_det(top);
}

double jacobian_det(const CurvePoly& P, const std::vector<double>& pts) {
    const int d = P.dim();
    if (static_cast<int>(pts.size()) != d) throw ConfigError("jacobian_det needs d points");
    std::vector<std::vector<double>> col(d, std::vector<double>(d));
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) col[j][i] = P.component(i).derivative().eval(pts[j]);
    }
    return det_columns(col, d);
}

Rational jacobian_det_exact(const CurvePoly& P, const std::vector<Rational>& pts) {
    const int d = P.dim();
    if (static_cast<int>(pts.size()) != d) throw ConfigError("jacobian_det needs d points");
    std::vector<std::vector<Rational>> col(d, std::vector<Rational>(d, Rational(0)));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) col[j][i] = P.component(i).derivative().eval(pts[j]);
    return det_columns(col, d);
}

double geom_ratio(const CurvePoly& P, const std::vector<double>& pts) {
    return GeomRatioEvaluator(P).ratio(pts);
}

GeomRatioEvaluator::GeomRatioEvaluator(const CurvePoly& P)
    : d_(P.dim()), L_(torsion_det(P)) {
    dcomps_.reserve(d_);
    for (const auto& c : P.components()) dcomps_.push_back(c.derivative());
}

double GeomRatioEvaluator::jacobian(const std::vector<double>& pts) const {
    std::vector<std::vector<double>> col(d_, std::vector<double>(d_));
    for (int j = 0; j < d_; ++j)
        for (int i = 0; i < d_; ++i) col[j][i] = dcomps_[i].eval(pts[j]);
    return det_columns(col, d_);
}

double GeomRatioEvaluator::ratio(const std::vector<double>& pts) const {
    // det(P'(t_1) ... P'(t_d)) factors as prod_{j<k}(t_k - t_j) times the
    // divided-difference determinant; dividing that Vandermonde factor out
    // analytically keeps the ratio finite and stable near coincident points
    // (divided differences of t^m are complete homogeneous symmetric sums).
    double denom = 1.0;
    for (int j = 0; j < d_; ++j) {
        double lj = std::abs(L_.eval(pts[j]));
        if (lj == 0.0) throw DegeneratePointError("torsion vanishes at a sample point");
        denom *= std::pow(lj, 1.0 / d_);
        for (int k = j + 1; k < d_; ++k)
            if (pts[j] == pts[k]) throw DegeneratePointError("coincident sample points");
    }

    int max_m = 0;
    for (const auto& dp : dcomps_) max_m = std::max(max_m, dp.degree());
    // h[k] = complete homogeneous symmetric sum of degree k over the prefix
    std::vector<double> h(max_m + 1, 0.0);
    h[0] = 1.0;
    std::vector<std::vector<double>> col(d_, std::vector<double>(d_, 0.0));
    for (int j = 0; j < d_; ++j) {
        double x = pts[j];
        if (j == 0) {
            for (int k = 1; k <= max_m; ++k) h[k] = h[k - 1] * x;
        } else {
            for (int k = 1; k <= max_m; ++k) h[k] += x * h[k - 1];
        }
        for (int i = 0; i < d_; ++i) {
            const auto& cs = dcomps_[i].coeffs();
            double acc = 0.0;
            for (int m = j; m < static_cast<int>(cs.size()); ++m)
                acc += to_double(cs[m]) * h[m - j];
            col[j][i] = acc;
        }
    }
    return std::abs(det_columns(col, d_)) / denom;
}

std::vector<double> alternating_sum(const CurvePoly& P, const std::vector<double>& pts) {
    const int d = P.dim();
    std::vector<double> x(d, 0.0);
    for (int j = 0; j < d; ++j) {
        // sign (-1)^{d+j}: for j = 0 this is (-1)^d, the last point always enters with -1
        double s = ((d + j) % 2 == 0) ? 1.0 : -1.0;
        auto pj = P.point(pts[j]);
        for (int i = 0; i < d; ++i) x[i] += s * pj[i];
    }
    return x;
}

CurvePoly apply_matrix(const CurvePoly& P, const std::vector<Rational>& M) {
    const int d = P.dim();
    if (static_cast<int>(M.size()) != d * d) throw ConfigError("matrix size mismatch");
    std::vector<Polynomial> comps(d);
    for (int i = 0; i < d; ++i) {
        Polynomial acc;
        for (int j = 0; j < d; ++j) acc = acc + P.component(j) * M[i * d + j];
        comps[i] = acc;
    }
    return CurvePoly(d, std::move(comps));
}

CurvePoly negate_curve(const CurvePoly& P) {
    std::vector<Polynomial> comps;
    comps.reserve(P.dim());
    for (const auto& c : P.components()) comps.push_back(-c);
    return CurvePoly(P.dim(), std::move(comps));
}

CurvePoly model_curve(int dim) {
    std::vector<Polynomial> comps;
    for (int j = 1; j <= dim; ++j) comps.push_back(Polynomial::monomial(j));
    return CurvePoly(dim, std::move(comps));
}

}  // namespace curveavg
