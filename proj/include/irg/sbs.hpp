#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "irg/weights.hpp"

namespace irg {

// Size-biased sampling without replacement: each remaining index is drawn
// with probability proportional to its weight.

enum class DrawMethod { Sequential, Clock };

struct SbsDraw {
  std::vector<std::uint32_t> order;  ///< indices in draw order (prefix of length m for sequential)
  DrawMethod method = DrawMethod::Sequential;
};

/// Exponential clocks T_k ~ Exp(w_k / ell); ring order is a size-biased permutation.
struct ClockTrace {
  std::vector<double> times;     ///< T_k by item index
  std::vector<double> grid;      ///< evaluation points x
  std::vector<std::size_t> count;  ///< N(x) = #{k : T_k <= x}
  std::vector<double> weighted;  ///< X(x) = sum_k w_k 1(T_k <= x), summed in index order
};

/// min(w, cap). Monotone in w.
struct TruncatedWeightView {
  double cap = 0.0;
  double operator()(double w) const { return w < cap ? w : cap; }
};

/// First m draws, sum-tree backed, O(m log n).
SbsDraw draw_sequential(std::span<const double> weights, std::size_t m, std::uint64_t seed);
SbsDraw draw_sequential(const WeightVector& wv, std::size_t m, std::uint64_t seed);

/// Full permutation by sorting clock times; clocks are evaluated on `grid`.
std::pair<SbsDraw, ClockTrace> draw_clock(std::span<const double> weights, std::uint64_t seed,
                                          std::span<const double> grid = {});
std::pair<SbsDraw, ClockTrace> draw_clock(const WeightVector& wv, std::uint64_t seed,
                                          std::span<const double> grid = {});

/// Sum over the first `upto` clock-ordered items, i.e. sum_k w_{v'(k)} 1(N(x) >= k) with N(x) = upto.
double clock_prefix_weight(std::span<const double> weights, const SbsDraw& draw, std::size_t upto);

struct MeanCurve {
  std::vector<double> mean;        ///< index l-1 holds the average of w_{v(l)}
  std::vector<double> std_error;
  std::vector<double> prediction;  ///< 1 + (l / ell)(1 - c_hat)
  std::size_t rounds = 0;
};

struct MeanCurveOptions {
  unsigned threads = 1;
  /// When > 0, also collect per-round block means over consecutive positions
  /// [1, b], [b+1, 2b], ... and their standard errors.
  std::size_t block = 0;
};

struct BlockMeans {
  std::vector<std::size_t> first;  ///< first position of each block (1-based)
  std::vector<std::size_t> last;
  std::vector<double> mean;
  std::vector<double> std_error;
  std::vector<double> prediction;  ///< mean of the prediction over the block
};

/// Monte Carlo average of w_{v(l)} for l = 1..l_max over independent draws.
MeanCurve mean_curve(const WeightVector& wv, std::size_t l_max, std::size_t rounds, std::uint64_t seed,
                     const MeanCurveOptions& opt = {}, BlockMeans* blocks = nullptr);

void write_mean_curve_csv(const MeanCurve& curve, const std::filesystem::path& path);

// ---- exact enumeration (small n) -------------------------------------------

inline constexpr std::size_t kMaxEnumerationN = 8;
inline constexpr std::size_t kMaxConjectureN = 6;

/// Visits every permutation with its exact probability under size-biased
/// sampling without replacement. Throws for n > 8 or non-positive weights.
void for_each_order(std::span<const double> weights,
                    const std::function<void(std::span<const std::size_t>, double)>& visit);

/// Exact expectation of a statistic of the draw order.
double enumerate_exact(std::span<const double> weights,
                       const std::function<double(std::span<const std::size_t>)>& statistic);

/// marginals[u][k] = P(v(u+1) = k), exact.
std::vector<std::vector<double>> position_marginals(std::span<const double> weights);

/// Probability of a complete order from the product formula.
double order_probability(std::span<const double> weights, std::span<const std::size_t> order);

/// Same probability computed from competing exponential clocks:
/// P(T_{o1} < ... < T_{on}) = prod_i w_{o_i} / (sum of w over o_i..o_n).
double clock_order_probability(std::span<const double> weights, std::span<const std::size_t> order);

struct MonotonicityReport {
  bool holds = true;
  double max_violation = 0.0;              ///< max over u, x of P(u+1) - P(u), clipped at 0
  std::vector<double> thresholds;          ///< distinct truncated weight values
  std::vector<std::vector<double>> survival;  ///< survival[u][t] = P(min(w_{v(u+1)}, cap) >= thresholds[t])
};

/// Checks that P(min(w_{v(u)}, cap) >= x) is non-increasing in u for every x.
MonotonicityReport check_monotonicity(std::span<const double> weights, double cap);

enum class ConjectureKind {
  Concentration,        ///< without-replacement window sum more concentrated than i.i.d.
  OrderedShift,         ///< P(a_V(1..m) >= x) >= P(a_V(2..m+1) >= x)
  OrderedReplacement,   ///< P(a_J(1..m) >= x) >= P(a_V(1..m) >= x), J i.i.d. ~ V(1)
};

std::string_view to_string(ConjectureKind k);

struct ConjectureInstance {
  ConjectureKind kind = ConjectureKind::Concentration;
  std::size_t m = 0;
  std::size_t l = 0;       ///< window start for Concentration, 1 for the ordered kinds
  std::vector<double> x;   ///< one deviation, or m thresholds
  double lhs = 0.0;        ///< side claimed to be smaller (Concentration) or larger (ordered)
  double rhs = 0.0;
  bool holds = true;
};

struct ConjectureReport {
  std::vector<double> weights;
  std::vector<ConjectureInstance> instances;

  /// All ordered instances with m <= m hold.
  bool ordered_holds_up_to(std::size_t m) const;
  std::size_t failures(ConjectureKind kind) const;
};

/// Exact evaluation of both sampling conjectures for n <= 6.
/// Concentration: every window [l, m] and every achievable deviation x, the
/// with-replacement comparator drawing i.i.d. from the v(l) marginal.
/// Ordered: all m <= m_max (and <= n - 1), thresholds over the distinct weights.
ConjectureReport check_conjectures(std::span<const double> weights, std::size_t m_max,
                                   bool include_concentration = true);

nlohmann::json to_json(const ConjectureReport& report);
nlohmann::json to_json(const MonotonicityReport& report);

}  // namespace irg
