#ifndef CURVEAVG_POLYNOMIAL_HPP
#define CURVEAVG_POLYNOMIAL_HPP

#include "curveavg/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace curveavg {

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// The zero polynomial is the empty coefficient vector; otherwise the leading
/// coefficient is nonzero.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<long> ints);

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(const Rational& c);
    // t^k
    static Polynomial monomial(unsigned k, const Rational& c = Rational(1));

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& coeff(size_t i) const;
    const Rational& leading() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

    Polynomial derivative(unsigned order = 1) const;

    Rational eval(const Rational& t) const;  // exact Horner
    double eval(double t) const;             // double Horner

    // Exact Euclidean division; throws ZeroPolynomialError on zero divisor.
    std::pair<Polynomial, Polynomial> divrem(const Polynomial& divisor) const;

    // Monic gcd over the rationals.
    static Polynomial gcd(Polynomial a, Polynomial b);

    // Yun decomposition: returns g_1, g_2, ... with *this = c * prod g_i^i and
    // the g_i squarefree and pairwise coprime.
    std::vector<Polynomial> squarefree_decomposition() const;
    Polynomial squarefree_part() const;

    // Multiplicity of an exact root (0 if p(r) != 0).
    unsigned root_multiplicity(const Rational& r) const;

    std::string str() const;  // human-readable, for logs and test failures

  private:
    void normalize();
    std::vector<Rational> coeffs_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

}  // namespace curveavg

#endif
