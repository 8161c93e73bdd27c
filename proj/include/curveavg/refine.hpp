#ifndef CURVEAVG_REFINE_HPP
#define CURVEAVG_REFINE_HPP

#include "curveavg/decomp.hpp"
#include "curveavg/grid.hpp"
#include "curveavg/interval_union.hpp"
#include "curveavg/measure.hpp"
#include "curveavg/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace curveavg {

/// Finite measure-space operator: pairing(S, T) = sum over x in T, y in S of
/// kernel(x,y) * f_mass(x) * e_mass(y). Everything downstream of the entries
/// runs in exact rational arithmetic, so the refinement chain inequalities are
/// checked exactly rather than to a tolerance.
class DiscreteOperator {
  public:
    DiscreteOperator(std::vector<Rational> e_mass, std::vector<Rational> f_mass,
                     std::vector<Rational> kernel_rowmajor /* f_cells x e_cells */);

    size_t e_cells() const { return e_mass_.size(); }
    size_t f_cells() const { return f_mass_.size(); }
    const Rational& e_mass(size_t y) const { return e_mass_[y]; }
    const Rational& f_mass(size_t x) const { return f_mass_[x]; }
    const Rational& kernel(size_t x, size_t y) const { return kernel_[x * e_mass_.size() + y]; }

    Rational apply(const std::vector<char>& e_subset, size_t x) const;    // A chi_S (x)
    Rational adjoint(const std::vector<char>& f_subset, size_t y) const;  // A* chi_T (y)
    Rational pairing(const std::vector<char>& e_subset, const std::vector<char>& f_subset) const;
    Rational subset_mass(const std::vector<char>& subset, bool e_side) const;

  private:
    std::vector<Rational> e_mass_, f_mass_, kernel_;
};

struct RefineLevel {
    std::vector<char> F_cells, E_cells;  // membership masks after this level
    Rational pairing;                    // <A chi_{E_n}, chi_{F_n}>
    Rational f_threshold, e_threshold;   // alpha/2^{2n-1}, beta/2^{2n}
};

/// Trace of the alternating refinement F_1, E_1, F_2, ... with thresholds
/// alpha/2, beta/4, alpha/8, ..., beta/2^{2n}. Invariants checked exactly:
/// alpha |F| = beta |E|, pairing at level n >= K / 2^{2n}, all sets nonempty.
struct RefinementTrace {
    Rational alpha, beta, K, E_total, F_total;
    std::vector<RefineLevel> levels;
    bool invariants_ok = false;

    const std::vector<char>& deepest_F() const { return levels.back().F_cells; }
    const std::vector<char>& E_at(size_t n) const { return levels.at(n).E_cells; }
};

/// Throws EmptyPairingError when K = 0.
RefinementTrace refine(const DiscreteOperator& op, const std::vector<char>& E,
                       const std::vector<char>& F, int depth);

/// Discretisation of the interval-localised operator
/// A_I f(x) = int_I f(x - P(t)) |t - b|^e dt over cell grids on E and F:
/// kernel(x, y) = mu(pullback of cell y at centre x) / vol(cell y), evaluated
/// through the exact pullback and power-rule mass.
struct DiscretizedOperator {
    DiscreteOperator op;
    CurvePoly curve;
    CenteredInterval ci;
    double mu_exponent;
    GridFunction e_grid, f_grid;  // geometry carriers (values unused)

    std::vector<Box> cells_as_boxes(const std::vector<char>& subset, bool e_side) const;
    std::vector<double> f_cell_center(size_t x) const { return f_grid.cell_center(x); }
};

DiscretizedOperator discretize_operator(const CurvePoly& P, const CenteredInterval& ci,
                                        double mu_exponent, const Box& E_box,
                                        const std::vector<int>& e_res, const Box& F_box,
                                        const std::vector<int>& f_res);

/// Structured parameter sets extracted from a refinement trace: the base point
/// x0, S and the sampled fibre sets, realized exactly as interval unions via
/// pullbacks, with their mu floors.
struct StructuredSets {
    std::vector<double> x0;
    IntervalUnion S;
    double mu_S = 0.0, floor_S = 0.0;
    std::vector<double> s_samples;
    std::vector<IntervalUnion> T;  // per s sample
    std::vector<double> mu_T;
    double floor_T = 0.0;
    std::vector<std::vector<double>> t_samples;     // per s sample (d = 3)
    std::vector<std::vector<IntervalUnion>> U;      // per (s, t) sample (d = 3)
    std::vector<std::vector<double>> mu_U;
    double floor_U = 0.0;
};

struct StructuredParamsConfig {
    int s_samples = 32;
    int t_samples = 16;
    int depth = 2;  // refinement levels: 2 reaches F_2 (d = 3) / E_1 (d = 2)
};

/// Runs refine on the discretized operator and realizes S, T_s (and U_{s,t}
/// for d = 3). Throws FloorViolationError when a recorded mu floor fails.
StructuredSets structured_params(const DiscretizedOperator& dop, int d,
                                 const StructuredParamsConfig& cfg = StructuredParamsConfig{});

// ---- excision ----

enum class ExcisionKind { BAlpha, BBeta, BTAlpha, BSAlpha, BSBeta };

struct ExcisionSpec {
    double delta = 0.5;
    ExcisionKind kind = ExcisionKind::BAlpha;
    double level = 0.0;   // the alpha or beta value entering the radius
    double anchor = 0.0;  // t or s for the anchored kinds
    double b = 0.0;
    int k = 0;
    int d = 3;
};

struct ExcisionResult {
    IntervalUnion remainder;
    IntervalUnion removed;
    double delta_used = 0.0;
    double c0 = 0.0;  // mu(W) / level before excision
    double mu_before = 0.0, mu_after = 0.0;
    bool ok = false;  // false: delta underflow, contract unreachable
};

/// Realizes the excision interval for the spec and removes it from W, halving
/// delta until mu(W minus B) >= (c0/2) * level or delta drops below 1e-12.
ExcisionResult excise(const IntervalUnion& W, const ExcisionSpec& spec, const CenteredInterval& ci);

// ---- iterated lower bounds ----

struct IteratedBoundInput {
    CenteredInterval ci;
    int d = 3;
    double alpha = 0.0, beta = 0.0;
    IntervalUnion S;
    // Either common fibre sets (exact/adaptive path) or per-sample maps.
    std::optional<IntervalUnion> T_common;
    std::optional<IntervalUnion> U_common;
    const StructuredSets* sampled = nullptr;  // per-sample fibres from structured_params
};

struct BoundCheckResult {
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

/// d = 3: integral of |s-b|^{k/3} |t-b|^{k/3} |u-b|^{k/3} |s-t||u-s||u-t| over
/// S x T_s x U_{s,t} against rhs = alpha^4 beta^2. d = 2: |s-b|^{k/2}
/// |t-b|^{k/2} |s-t| over S x T_s against rhs = alpha^2 beta. The innermost
/// integral is exact power-rule; outer levels are adaptive for common sets and
/// mu-quantile sums for sampled fibres.
BoundCheckResult iterated_bound_check(const IteratedBoundInput& in);

/// Exact inner integrals, exposed for the brute-force cross-checks.
double weighted_single_integral(const IntervalUnion& T, double b, double e, double s);
double weighted_pair_integral(const IntervalUnion& U, double b, double e, double s, double t);

// ---- randomized configuration suites ----

struct RandomConfig {
    IteratedBoundInput input;
    double mu_S_floor = 0.0, mu_T_floor = 0.0, mu_U_floor = 0.0;
};

/// Draws S, T, U as random interval unions meeting the structured floors
/// exactly (d = 3 floors alpha/8, beta/4, alpha/2; d = 2 floors beta/4,
/// alpha/2) inside the certified interval.
RandomConfig random_structured_config(const CenteredInterval& ci, int d, double alpha, double beta,
                                      uint64_t seed, int max_pieces = 3);

struct AdversarialResult {
    double best_ratio = 0.0;
    long proposals = 0;
    bool used_adapted_fibres = false;
};

/// Simulated-annealing minimization of the bound ratio over placements of the
/// structured sets (common unions and per-s adapted fibres), deterministic
/// given the seed.
AdversarialResult adversarial_min_ratio(const CenteredInterval& ci, int d, double alpha,
                                        double beta, uint64_t seed, long proposals = 2000);

// ---- case diagnostics ----

struct CaseRow {
    int case_index = 0;         // 1, 2, 3
    double mu_total = 0.0;      // aggregated over sampled s
    double contribution = 0.0;  // integral restricted to the piece
    int times_largest = 0;      // how often this piece dominates per sampled s
};

struct CaseTable {
    std::vector<CaseRow> t_cases;                 // T_s split
    std::vector<CaseRow> u_cases;                 // U_{s,t} split, d = 3
    std::pair<Rational, Rational> exponent_pair;  // (A, B) for the interval's k
    double mu_partition_defect = 0.0;             // max |sum of pieces - mu(T_s)|
};

/// Threshold split of T_s (1/8 and 2 for d = 3; 1/2 and 2 for d = 2) and
/// U_{s,t} (1/4 and 4), with per-piece masses and contributions.
CaseTable case_diagnostics(const IteratedBoundInput& in);

/// (A, B) = ((3/2)(k+4)/(k+3), (3/2)(k+2)/(k+3)); A + B = 3 identically.
std::pair<Rational, Rational> d2_case_exponents(int k);
/// d = 3 analogue with A + B = 4, 1 <= A < 2 < B <= 3.
std::pair<Rational, Rational> d3_lemma_exponents(int k);

}  // namespace curveavg

#endif
