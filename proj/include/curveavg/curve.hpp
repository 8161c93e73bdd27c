#ifndef CURVEAVG_CURVE_HPP
#define CURVEAVG_CURVE_HPP

#include "curveavg/polynomial.hpp"

#include <array>
#include <vector>

namespace curveavg {

inline constexpr int kMaxComponentDegree = 16;

/// Polynomial curve t -> (P_1(t), ..., P_d(t)) in dimension d = 2 or 3.
/// Construction enforces the dimension, a non-constant curve and the per
/// component degree cap; exact arithmetic stays tractable under the cap.
class CurvePoly {
  public:
    CurvePoly(int dim, std::vector<Polynomial> components);

    int dim() const { return dim_; }
    const Polynomial& component(int i) const { return components_[i]; }
    const std::vector<Polynomial>& components() const { return components_; }
    int max_degree() const;

    /// Affine arclength weight exponent 2/(d(d+1)).
    double affine_exponent() const { return 2.0 / (dim_ * (dim_ + 1)); }

    std::vector<double> point(double t) const;          // P(t)
    std::vector<double> derivative_point(double t) const;  // P'(t)

  private:
    int dim_;
    std::vector<Polynomial> components_;
};

/// Torsion polynomial L_P = det(P'(t) ... P^{(d)}(t)), exact cofactor
/// expansion over polynomial entries. Identically zero signals a degenerate
/// curve (contained in an affine hyperplane worth of directions).
Polynomial torsion_det(const CurvePoly& P);

/// Leading principal j x j minor D_j of the derivative matrix
/// (P_i^{(j)}(t))_{i,j}; D_1 = P_1', D_2 = P_1' P_2'' - P_2' P_1''.
Polynomial leading_minor(const CurvePoly& P, int j);

/// det(P'(t_1) ... P'(t_d)). Raw determinant, no extra sign; inequality
/// checks take the absolute value.
double jacobian_det(const CurvePoly& P, const std::vector<double>& pts);
Rational jacobian_det_exact(const CurvePoly& P, const std::vector<Rational>& pts);

/// |J(pts)| / (prod_j |L(t_j)|^{1/d} * prod_{j<k} |t_j - t_k|).
/// Throws DegeneratePointError when the denominator vanishes.
double geom_ratio(const CurvePoly& P, const std::vector<double>& pts);

/// Precomputed kit for ratio/Jacobian sampling loops: derivative components
/// and the torsion polynomial are built once.
class GeomRatioEvaluator {
  public:
    explicit GeomRatioEvaluator(const CurvePoly& P);
    int dim() const { return d_; }
    const Polynomial& torsion() const { return L_; }
    double torsion_at(double t) const { return L_.eval(t); }
    double jacobian(const std::vector<double>& pts) const;
    double ratio(const std::vector<double>& pts) const;  // throws DegeneratePointError

  private:
    int d_;
    std::vector<Polynomial> dcomps_;
    Polynomial L_;
};

/// Image of the alternating-sum map Phi(t_1,..,t_d) =
/// (-1)^d P(t_1) + (-1)^{d+1} P(t_2) + ... - P(t_d).
std::vector<double> alternating_sum(const CurvePoly& P, const std::vector<double>& pts);

/// M * P for a d x d rational matrix M (row-major), used by the equivariance
/// and affine-invariance checks.
CurvePoly apply_matrix(const CurvePoly& P, const std::vector<Rational>& M_rowmajor);

CurvePoly negate_curve(const CurvePoly& P);

/// Model curve (t, t^2, ..., t^d).
CurvePoly model_curve(int dim);

}  // namespace curveavg

#endif
