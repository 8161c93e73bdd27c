#ifndef CURVEAVG_RNG_HPP
#define CURVEAVG_RNG_HPP

#include <cstdint>
#include <vector>

namespace curveavg {

// xoshiro256++ seeded through splitmix64. Self-contained so that seeded runs
// are byte-identical across platforms and standard library versions.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& si : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            si = z ^ (z >> 31);
        }
    }

    uint64_t next() {
        auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    uint64_t below(uint64_t n) { return next() % n; }

    long integer(long lo, long hi) {  // inclusive range
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // Derives an independent stream, used to hand deterministic seeds to
    // workers regardless of scheduling.
    Rng fork(uint64_t stream) { return Rng(next() ^ (0x632be59bd9b4e019ULL * (stream + 1))); }

  private:
    uint64_t s_[4];
};

/// Latin hypercube sample of n points in [0,1)^dim: every axis is stratified
/// into n equal cells with one point per cell.
inline std::vector<std::vector<double>> latin_hypercube(Rng& rng, int dim, int n) {
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    std::vector<int> perm(n);
    for (int axis = 0; axis < dim; ++axis) {
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(rng.below(static_cast<uint64_t>(i + 1)));
            std::swap(perm[i], perm[j]);
        }
        for (int i = 0; i < n; ++i) pts[i][axis] = (perm[i] + rng.uniform()) / n;
    }
    return pts;
}

}  // namespace curveavg

#endif
