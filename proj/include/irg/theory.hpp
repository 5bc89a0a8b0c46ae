#pragma once

#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "irg/weights.hpp"

namespace irg {

/// The two numbers every prediction depends on: ell = sum of weights and
/// C = E[W^3]/E[W] (taken as c_hat of the realised weight vector).
struct MomentSummary {
  double ell = 0.0;
  double c = 1.0;

  static MomentSummary of(const WeightVector& wv) { return {wv.ell(), wv.c_hat()}; }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Leading-order predictions for the barely supercritical graph at p_f.
/// All o(.) remainders are dropped.
struct Prediction {
  double p = 0.0;
  double f = 0.0;
  double eps = 0.5;
  double eps_prime = 0.4;
  double ell = 0.0;
  double c = 1.0;
  Interval giant_size;    ///< [2(1-e'/2) f l^{2/3}/C - l^{2/3}/C, 2(1+e'/2) f l^{2/3}/C]
  Interval giant_weight;  ///< [2(1-e') f l^{2/3}/C, 2(1+e') f l^{2/3}/C]
  double giant_center = 0.0;       ///< 2 f l^{2/3} / C
  double surplus_scale = 0.0;      ///< f^3
  double small_before_size = 0.0;  ///< l^{2/3} / f^{1-eps}
  double small_after_size = 0.0;   ///< l^{2/3} / f
  bool leading_order_only = true;

  /// m f l^{-1/3} - C m^2 / (2 l): the h = 0, l = 1 parabola; vertex at f l^{2/3}/C.
  double drift(double m) const;
};

Prediction predict(const MomentSummary& moments, double f, double eps, double eps_prime);
Prediction predict(const WeightVector& wv, double f, double eps, double eps_prime);

/// (m - l)(f ell^{-1/3} - (C(m + l) + 2h) / (2 ell)) + 1 at each grid point.
double drift_value(const MomentSummary& moments, double f, double h, double l, double m);
std::vector<double> drift_curve(const MomentSummary& moments, double f, double h, double l,
                                std::span<const double> m_grid);
std::vector<double> drift_curve(const WeightVector& wv, double f, double h, double l,
                                std::span<const double> m_grid);

nlohmann::json to_json(const Prediction& pred);

}  // namespace irg
