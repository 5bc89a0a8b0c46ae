#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace irg {

/// Positive vertex weights sorted descending, with cached power sums.
///
/// Immutable after construction. All constructors go through from_values(),
/// which sorts (stable, so ties keep their input order) and rejects
/// non-positive or non-finite entries.
class WeightVector {
 public:
  static WeightVector from_values(std::vector<double> values);

  std::span<const double> values() const { return w_; }
  double operator[](std::size_t i) const { return w_[i]; }
  std::size_t size() const { return w_.size(); }

  double ell() const { return ell_; }  ///< sum of weights
  double s2() const { return s2_; }    ///< sum of squares
  double s3() const { return s3_; }    ///< sum of cubes
  double w_max() const { return w_.front(); }
  double w_min() const { return w_.back(); }
  /// Empirical E[W^3]/E[W].
  double c_hat() const { return s3_ / ell_; }

 private:
  WeightVector() = default;
  std::vector<double> w_;
  double ell_ = 0.0;
  double s2_ = 0.0;
  double s3_ = 0.0;
};

/// n i.i.d. Pareto draws with density shape * scale^shape / x^(shape+1) on [scale, inf).
WeightVector generate_pareto_iid(std::size_t n, double scale, double shape, std::uint64_t seed);

WeightVector generate_constant(std::size_t n, double c);

/// One positive decimal per line; blank lines are ignored.
WeightVector load_weights(const std::filesystem::path& path);
WeightVector parse_weights(std::istream& in);
void save_weights(const WeightVector& wv, const std::filesystem::path& path);

/// Closed-form raw moment E[X^k] of Pareto(scale, shape); infinite when k >= shape.
double pareto_moment(double scale, double shape, int k);

struct MomentTargets {
  double ew = 1.0;
  double ew2 = 1.0;
  double ew3 = 1.0;
};

/// Tolerance constants for the finite-n check of the moment conditions.
/// Unset entries are filled from the weight vector (see default_tolerances).
struct ToleranceProfile {
  std::optional<double> tol_iii;
  std::optional<double> tol_iv;
  std::optional<double> tol_v;
  std::optional<double> tol_vi;
  std::optional<double> tol_vii;
};

struct ResolvedTolerances {
  double tol_iii = 0.0;
  double tol_iv = 0.0;
  double tol_v = 0.0;
  double tol_vi = 0.0;
  double tol_vii = 1.0;
};

/// Defaults: tol_iii = 0.02*EW, tol_iv/v = 3 * empirical sd of W, W^2, tol_vi = 7 * empirical sd
/// of W^3, tol_vii = 1.
ResolvedTolerances default_tolerances(const WeightVector& wv, const MomentTargets& targets,
                                      const ToleranceProfile& overrides = {});

struct ConditionItem {
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;  ///< absolute bound the residual was compared against
};

struct ConditionsReport {
  ConditionItem item_iii;  ///< |EW2 - EW|
  ConditionItem item_iv;   ///< |ell - EW n|        vs tol_iv n^(2/3)
  ConditionItem item_v;    ///< |s2 - EW2 n|        vs tol_v n^(2/3)
  ConditionItem item_vi;   ///< |s3 - EW3 n|        vs tol_vi sqrt(n)
  ConditionItem item_vii;  ///< w_max               vs tol_vii n^(1/3)
  ResolvedTolerances tolerances;

  bool all_pass() const {
    return item_iii.pass && item_iv.pass && item_v.pass && item_vi.pass && item_vii.pass;
  }
};

ConditionsReport validate_conditions(const WeightVector& wv, const MomentTargets& targets,
                                     const ToleranceProfile& tol = {});

nlohmann::json to_json(const ConditionsReport& report);

}  // namespace irg
