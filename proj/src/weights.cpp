#include "irg/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "irg/rng.hpp"

namespace irg {

WeightVector WeightVector::from_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("weight vector is empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] <= 0.0) {
      throw std::invalid_argument("weight " + std::to_string(i) + " is not a positive finite number");
    }
  }
  std::stable_sort(values.begin(), values.end(), std::greater<>());

  WeightVector wv;
  wv.w_ = std::move(values);
  // Summed smallest-first for accuracy.
  for (auto it = wv.w_.rbegin(); it != wv.w_.rend(); ++it) {
    const double x = *it;
    wv.ell_ += x;
    wv.s2_ += x * x;
    wv.s3_ += x * x * x;
  }
  return wv;
}

WeightVector generate_pareto_iid(std::size_t n, double scale, double shape, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("pareto weights need n >= 2");
  if (!(scale > 0.0)) throw std::invalid_argument("pareto scale must be positive");
  if (!(shape > 3.0)) {
    throw std::invalid_argument("pareto shape must exceed 3 (the third moment is infinite otherwise)");
  }
  Stream rng(derive_seed(seed, {0x77656967ULL}));
  std::vector<double> w(n);
  const double inv_shape = 1.0 / shape;
  for (auto& x : w) x = scale * std::pow(rng.uniform_open(), -inv_shape);
  return WeightVector::from_values(std::move(w));
}

WeightVector generate_constant(std::size_t n, double c) {
  if (n < 2) throw std::invalid_argument("constant weights need n >= 2");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("constant weight must be positive");
  return WeightVector::from_values(std::vector<double>(n, c));
}

WeightVector parse_weights(std::istream& in) {
  std::vector<double> w;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, x);
    if (ec != std::errc() || ptr != e) {
      throw std::runtime_error("weights: line " + std::to_string(lineno) + ": cannot parse '" +
                               std::string(b, e) + "'");
    }
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::runtime_error("weights: line " + std::to_string(lineno) +
                               ": weight must be positive and finite");
    }
    w.push_back(x);
  }
  if (w.empty()) throw std::runtime_error("weights: no entries");
  return WeightVector::from_values(std::move(w));
}

WeightVector load_weights(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("weights: cannot open " + path.string());
  return parse_weights(in);
}

void save_weights(const WeightVector& wv, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  char buf[64];
  for (double x : wv.values()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    out.write(buf, ptr - buf);
    out.put('\n');
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

double pareto_moment(double scale, double shape, int k) {
  if (k >= shape) return std::numeric_limits<double>::infinity();
  return shape * std::pow(scale, k) / (shape - k);
}

namespace {

double empirical_sd_of_power(const WeightVector& wv, int k) {
  const auto n = static_cast<double>(wv.size());
  double mean = 0.0;
  for (double x : wv.values()) mean += std::pow(x, k);
  mean /= n;
  double ss = 0.0;
  for (double x : wv.values()) {
    const double d = std::pow(x, k) - mean;
    ss += d * d;
  }
  return wv.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

constexpr double kThirdMomentSdMultiplier = 7.0;

}  // namespace

ResolvedTolerances default_tolerances(const WeightVector& wv, const MomentTargets& targets,
                                      const ToleranceProfile& overrides) {
  ResolvedTolerances t;
  t.tol_iii = overrides.tol_iii.value_or(0.02 * targets.ew);
  t.tol_iv = overrides.tol_iv ? *overrides.tol_iv : 3.0 * empirical_sd_of_power(wv, 1);
  t.tol_v = overrides.tol_v ? *overrides.tol_v : 3.0 * empirical_sd_of_power(wv, 2);
  // W^3 is heavy tailed for Pareto shape 4, so its sum fluctuates faster than sqrt(n);
  // 7 sd keeps the pass rate of i.i.d. Pareto(2/3, 4) samples at n = 1e5 near 99%.
  t.tol_vi = overrides.tol_vi ? *overrides.tol_vi : kThirdMomentSdMultiplier * empirical_sd_of_power(wv, 3);
  t.tol_vii = overrides.tol_vii.value_or(1.0);
  return t;
}

ConditionsReport validate_conditions(const WeightVector& wv, const MomentTargets& targets,
                                     const ToleranceProfile& tol) {
  if (!std::isfinite(targets.ew) || !std::isfinite(targets.ew2) || !std::isfinite(targets.ew3)) {
    throw std::invalid_argument("moment targets must be finite");
  }
  if (!(targets.ew > 0.0)) throw std::invalid_argument("target E[W] must be positive");

  const auto n = static_cast<double>(wv.size());
  ConditionsReport r;
  r.tolerances = default_tolerances(wv, targets, tol);
  const auto& t = r.tolerances;

  auto judge = [](double residual, double bound) {
    return ConditionItem{residual <= bound, residual, bound};
  };
  r.item_iii = judge(std::abs(targets.ew2 - targets.ew), t.tol_iii);
  r.item_iv = judge(std::abs(wv.ell() - targets.ew * n), t.tol_iv * std::cbrt(n * n));
  r.item_v = judge(std::abs(wv.s2() - targets.ew2 * n), t.tol_v * std::cbrt(n * n));
  r.item_vi = judge(std::abs(wv.s3() - targets.ew3 * n), t.tol_vi * std::sqrt(n));
  r.item_vii = judge(wv.w_max(), t.tol_vii * std::cbrt(n));
  return r;
}

nlohmann::json to_json(const ConditionsReport& report) {
  auto item = [](const ConditionItem& c) {
    return nlohmann::json{{"pass", c.pass}, {"residual", c.residual}, {"tolerance", c.tolerance}};
  };
  return {
      {"item_iii", item(report.item_iii)},
      {"item_iv", item(report.item_iv)},
      {"item_v", item(report.item_v)},
      {"item_vi", item(report.item_vi)},
      {"item_vii", item(report.item_vii)},
      {"all_pass", report.all_pass()},
      {"tolerance_profile",
       {{"tol_iii", report.tolerances.tol_iii},
        {"tol_iv", report.tolerances.tol_iv},
        {"tol_v", report.tolerances.tol_v},
        {"tol_vi", report.tolerances.tol_vi},
        {"tol_vii", report.tolerances.tol_vii}}},
  };
}

}  // namespace irg
