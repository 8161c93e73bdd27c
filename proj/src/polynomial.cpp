#include "curveavg/polynomial.hpp"

#include "curveavg/errors.hpp"

#include <sstream>

namespace curveavg {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<long> ints) {
    coeffs_.reserve(ints.size());
    for (long v : ints) coeffs_.emplace_back(v);
    normalize();
}

Polynomial Polynomial::constant(const Rational& c) {
    Polynomial p;
    if (c != 0) p.coeffs_.push_back(c);
    return p;
}

Polynomial Polynomial::monomial(unsigned k, const Rational& c) {
    Polynomial p;
    if (c != 0) {
        p.coeffs_.assign(k + 1, Rational(0));
        p.coeffs_[k] = c;
    }
    return p;
}

void Polynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& Polynomial::coeff(size_t i) const {
    static const Rational kZero(0);
    return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const Rational& Polynomial::leading() const {
    if (is_zero()) throw ZeroPolynomialError();
    return coeffs_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    std::vector<Rational> out(coeffs_);
    for (auto& c : out) c = -c;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Rational& c) const {
    std::vector<Rational> out(coeffs_);
    for (auto& v : out) v *= c;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative(unsigned order) const {
    Polynomial p = *this;
    for (unsigned k = 0; k < order; ++k) {
        if (p.coeffs_.size() <= 1) return Polynomial();
        std::vector<Rational> out(p.coeffs_.size() - 1);
        for (size_t i = 1; i < p.coeffs_.size(); ++i) out[i - 1] = p.coeffs_[i] * Rational(i);
        p = Polynomial(std::move(out));
    }
    return p;
}

Rational Polynomial::eval(const Rational& t) const {
    Rational acc(0);
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
}

double Polynomial::eval(double t) const {
    double acc = 0.0;
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + to_double(coeffs_[i]);
    return acc;
}

std::pair<Polynomial, Polynomial> Polynomial::divrem(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw ZeroPolynomialError();
    Polynomial rem = *this;
    std::vector<Rational> quot;
    int dq = degree() - divisor.degree();
    if (dq < 0) return {Polynomial(), rem};
    quot.assign(dq + 1, Rational(0));
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
        int shift = rem.degree() - divisor.degree();
        Rational factor = rem.leading() / divisor.leading();
        quot[shift] = factor;
        rem = rem - divisor * Polynomial::monomial(static_cast<unsigned>(shift), factor);
    }
    return {Polynomial(std::move(quot)), rem};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * (Rational(1) / a.leading());  // monic
}

std::vector<Polynomial> Polynomial::squarefree_decomposition() const {
    // Yun's algorithm (characteristic 0).
    std::vector<Polynomial> out;
    if (is_zero() || degree() == 0) return out;
    Polynomial f = *this * (Rational(1) / leading());
    Polynomial fp = f.derivative();
    Polynomial a = gcd(f, fp);
    Polynomial b = f.divrem(a).first;
    Polynomial c = fp.divrem(a).first;
    Polynomial d = c - b.derivative();
    while (!(b.degree() == 0)) {
        Polynomial g = gcd(b, d);
        out.push_back(g);
        b = b.divrem(g).first;
        c = d.divrem(g).first;
        d = c - b.derivative();
    }
    return out;
}

Polynomial Polynomial::squarefree_part() const {
    if (is_zero()) throw ZeroPolynomialError();
    if (degree() == 0) return Polynomial::constant(Rational(1));
    Polynomial g = gcd(*this, derivative());
    return divrem(g).first;
}

unsigned Polynomial::root_multiplicity(const Rational& r) const {
    unsigned m = 0;
    Polynomial p = *this;
    while (!p.is_zero() && p.eval(r) == 0) {
        ++m;
        p = p.derivative();
    }
    return m;
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        os << coeffs_[i].str();
        if (i >= 1) os << "*t";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

}  // namespace curveavg
