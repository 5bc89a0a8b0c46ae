#include "irg/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "irg/graphgen.hpp"

namespace irg {

double Prediction::drift(double m) const {
  return m * f / std::cbrt(ell) - c * m * m / (2.0 * ell);
}

Prediction predict(const MomentSummary& moments, double f, double eps, double eps_prime) {
  if (!(f > 0.0)) throw std::invalid_argument("predict: f must be positive");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("predict: eps must lie in (0, 1]");
  if (!(eps_prime > 0.0 && eps_prime <= 1.0)) throw std::invalid_argument("predict: eps' must lie in (0, 1]");
  if (!(moments.ell > 0.0) || !(moments.c > 0.0)) throw std::invalid_argument("predict: bad moments");

  const double ell = moments.ell;
  const double c = moments.c;
  const double l23 = std::cbrt(ell * ell);

  Prediction r;
  r.p = critical_p(ell, f);
  r.f = f;
  r.eps = eps;
  r.eps_prime = eps_prime;
  r.ell = ell;
  r.c = c;
  r.giant_center = 2.0 * f * l23 / c;
  r.giant_size = {2.0 * (1.0 - eps_prime / 2.0) * f * l23 / c - l23 / c,
                  2.0 * (1.0 + eps_prime / 2.0) * f * l23 / c};
  r.giant_weight = {2.0 * (1.0 - eps_prime) * f * l23 / c, 2.0 * (1.0 + eps_prime) * f * l23 / c};
  r.surplus_scale = f * f * f;
  r.small_before_size = l23 / std::pow(f, 1.0 - eps);
  r.small_after_size = l23 / f;
  return r;
}

Prediction predict(const WeightVector& wv, double f, double eps, double eps_prime) {
  return predict(MomentSummary::of(wv), f, eps, eps_prime);
}

double drift_value(const MomentSummary& moments, double f, double h, double l, double m) {
  const double ell = moments.ell;
  return (m - l) * (f / std::cbrt(ell) - (moments.c * (m + l) + 2.0 * h) / (2.0 * ell)) + 1.0;
}

std::vector<double> drift_curve(const MomentSummary& moments, double f, double h, double l,
                                std::span<const double> m_grid) {
  std::vector<double> out;
  out.reserve(m_grid.size());
  for (double m : m_grid) out.push_back(drift_value(moments, f, h, l, m));
  return out;
}

std::vector<double> drift_curve(const WeightVector& wv, double f, double h, double l,
                                std::span<const double> m_grid) {
  for (double m : m_grid) {
    if (m < 1.0 || m > static_cast<double>(wv.size())) {
      throw std::invalid_argument("drift_curve: grid point outside 1..n");
    }
  }
  return drift_curve(MomentSummary::of(wv), f, h, l, m_grid);
}

nlohmann::json to_json(const Prediction& pred) {
  return {
      {"p", pred.p},
      {"f", pred.f},
      {"eps", pred.eps},
      {"eps_prime", pred.eps_prime},
      {"ell", pred.ell},
      {"c", pred.c},
      {"giant_size_interval", {pred.giant_size.lo, pred.giant_size.hi}},
      {"giant_weight_interval", {pred.giant_weight.lo, pred.giant_weight.hi}},
      {"giant_center", pred.giant_center},
      {"surplus_scale", pred.surplus_scale},
      {"small_before_size", pred.small_before_size},
      {"small_after_size", pred.small_after_size},
      {"drift_vertex", pred.f * std::cbrt(pred.ell * pred.ell) / pred.c},
      {"leading_order_only", pred.leading_order_only},
  };
}

}  // namespace irg
