#ifndef CURVEAVG_INTERVAL_UNION_HPP
#define CURVEAVG_INTERVAL_UNION_HPP

#include <utility>
#include <vector>

namespace curveavg {

/// Finite union of disjoint closed intervals [a_i, b_i], sorted, b_i < a_{i+1}.
/// Degenerate pieces (b <= a) are dropped on normalization; touching pieces
/// merge.
class IntervalUnion {
  public:
    IntervalUnion() = default;
    IntervalUnion(double a, double b);
    explicit IntervalUnion(std::vector<std::pair<double, double>> pieces);

    static IntervalUnion empty() { return IntervalUnion(); }

    const std::vector<std::pair<double, double>>& pieces() const { return pieces_; }
    bool is_empty() const { return pieces_.empty(); }
    size_t size() const { return pieces_.size(); }
    double length() const;
    double lo() const { return pieces_.front().first; }
    double hi() const { return pieces_.back().second; }

    bool contains(double t) const;
    bool subset_of(double a, double b) const;

    IntervalUnion intersect(const IntervalUnion& o) const;
    IntervalUnion unite(const IntervalUnion& o) const;
    IntervalUnion subtract(const IntervalUnion& o) const;
    IntervalUnion clip(double a, double b) const;

  private:
    void normalize();
    std::vector<std::pair<double, double>> pieces_;
};

}  // namespace curveavg

#endif
