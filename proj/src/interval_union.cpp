#include "curveavg/interval_union.hpp"

#include <algorithm>

namespace curveavg {

IntervalUnion::IntervalUnion(double a, double b) {
    pieces_.emplace_back(a, b);
    normalize();
}

IntervalUnion::IntervalUnion(std::vector<std::pair<double, double>> pieces)
    : pieces_(std::move(pieces)) {
    normalize();
}

void IntervalUnion::normalize() {
    std::erase_if(pieces_, [](const auto& p) { return !(p.first < p.second); });
    std::sort(pieces_.begin(), pieces_.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& p : pieces_) {
        if (!out.empty() && p.first <= out.back().second)
            out.back().second = std::max(out.back().second, p.second);
        else
            out.push_back(p);
    }
    pieces_ = std::move(out);
}

double IntervalUnion::length() const {
    double acc = 0.0;
    for (const auto& p : pieces_) acc += p.second - p.first;
    return acc;
}

bool IntervalUnion::contains(double t) const {
    for (const auto& p : pieces_)
        if (p.first <= t && t <= p.second) return true;
    return false;
}

bool IntervalUnion::subset_of(double a, double b) const {
    if (is_empty()) return true;
    return lo() >= a && hi() <= b;
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& o) const {
    std::vector<std::pair<double, double>> out;
    size_t i = 0, j = 0;
    while (i < pieces_.size() && j < o.pieces_.size()) {
        double a = std::max(pieces_[i].first, o.pieces_[j].first);
        double b = std::min(pieces_[i].second, o.pieces_[j].second);
        if (a < b) out.emplace_back(a, b);
        if (pieces_[i].second < o.pieces_[j].second)
            ++i;
        else
            ++j;
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& o) const {
    std::vector<std::pair<double, double>> out = pieces_;
    out.insert(out.end(), o.pieces_.begin(), o.pieces_.end());
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::subtract(const IntervalUnion& o) const {
    std::vector<std::pair<double, double>> out;
    for (auto piece : pieces_) {
        double cur = piece.first;
        for (const auto& q : o.pieces_) {
            if (q.second <= cur) continue;
            if (q.first >= piece.second) break;
            if (q.first > cur) out.emplace_back(cur, q.first);
            cur = std::max(cur, q.second);
            if (cur >= piece.second) break;
        }
        if (cur < piece.second) out.emplace_back(cur, piece.second);
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::clip(double a, double b) const {
    return intersect(IntervalUnion(a, b));
}

}  // namespace curveavg
