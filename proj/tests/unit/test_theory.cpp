#include <doctest.h>

#include <cmath>
#include <vector>

#include "irg/graphgen.hpp"
#include "irg/theory.hpp"

using namespace irg;

TEST_CASE("critical p") {
  CHECK(critical_p(1e6, 0.0) == doctest::Approx(1e-6).epsilon(1e-14));
  CHECK(critical_p(1e6, 10.0) == doctest::Approx(1.1e-6).epsilon(1e-14));
  const double ell = 8e4 * 8.0 / 9.0;
  const double direct = 1.0 / ell + 3.0 / std::pow(ell, 4.0 / 3.0);
  CHECK(std::abs(critical_p(ell, 3.0) - direct) <= 1e-15 * direct);
  CHECK_THROWS(critical_p(1e6, -200.0));
}

TEST_CASE("giant-window interval for ell = 1e6, f = 10, C = 4/3") {
  const auto pr = predict(MomentSummary{1e6, 4.0 / 3.0}, 10.0, 0.5, 0.2);
  CHECK(pr.giant_size.lo == doctest::Approx(127500.0));
  CHECK(pr.giant_size.hi == doctest::Approx(165000.0));
  CHECK(pr.giant_center == doctest::Approx(150000.0));
  CHECK(pr.giant_size.contains(pr.giant_center));
  CHECK(pr.giant_weight.lo == doctest::Approx(2 * 0.8 * 10 * 1e4 * 0.75));
  CHECK(pr.giant_weight.hi == doctest::Approx(2 * 1.2 * 10 * 1e4 * 0.75));
  CHECK(pr.surplus_scale == doctest::Approx(1000.0));
  CHECK(pr.small_after_size == doctest::Approx(1000.0));
  CHECK(pr.small_before_size == doctest::Approx(1e4 / std::sqrt(10.0)));
  CHECK(pr.leading_order_only);
}

TEST_CASE("size interval width") {
  for (double f : {2.0, 7.0, 30.0}) {
    for (double ep : {0.1, 0.4, 1.0}) {
      const double ell = 5e5, c = 1.3;
      const auto pr = predict(MomentSummary{ell, c}, f, 0.5, ep);
      const double l23 = std::cbrt(ell * ell);
      CHECK(pr.giant_size.hi - pr.giant_size.lo == doctest::Approx(2 * ep * f * l23 / c + l23 / c));
    }
  }
}

TEST_CASE("Erdos-Renyi specialisation") {
  const auto wv = WeightVector::from_values(std::vector<double>(1000, 1.0));
  const auto pr = predict(wv, 4.0, 0.5, 0.4);
  CHECK(pr.c == 1.0);
  CHECK(pr.giant_center == doctest::Approx(2 * 4.0 * 100.0));
}

TEST_CASE("drift parabola: vertex and root") {
  const double ell = 1e5, c = 1.25, f = 6.0;
  const auto pr = predict(MomentSummary{ell, c}, f, 0.5, 0.4);
  const double vertex = f * std::cbrt(ell * ell) / c;
  CHECK(pr.drift(vertex) == doctest::Approx(f * f * std::cbrt(ell) / (2 * c)));
  CHECK(std::abs(pr.drift(2 * vertex)) < 1e-9 * pr.drift(vertex));
  CHECK(pr.drift(vertex) > pr.drift(0.9 * vertex));
  CHECK(pr.drift(vertex) > pr.drift(1.1 * vertex));
}

TEST_CASE("drift_value against the general formula") {
  const MomentSummary ms{1e5, 1.25};
  CHECK(drift_value(ms, 5.0, 0.0, 1.0, 1.0) == 1.0);
  const double f = 5.0, l = 1.0;
  const double vertex = f * std::cbrt(ms.ell * ms.ell) / ms.c;
  // The parabola in m peaks at f l^{2/3} / c whatever the starting index.
  for (double l0 : {0.0, 1.0, 40.0}) {
    for (double d : {10.0, 300.0, 1000.0}) {
      CHECK(drift_value(ms, f, 0.0, l0, vertex - d) ==
            doctest::Approx(drift_value(ms, f, 0.0, l0, vertex + d)).epsilon(1e-9));
    }
  }
  const double h = std::cbrt(ms.ell);
  for (double m : {2.0, 10.0, 50.0}) {
    CHECK(drift_value(ms, f, h, l, m) < drift_value(ms, f, 0.0, l, m));
  }
}

TEST_CASE("drift_curve validation") {
  const auto wv = WeightVector::from_values(std::vector<double>(100, 1.0));
  const std::vector<double> grid = {1, 10, 100};
  const auto c = drift_curve(wv, 2.0, 0.0, 1.0, grid);
  CHECK(c.size() == 3);
  CHECK(c[0] == 1.0);
  const std::vector<double> bad = {0, 10};
  CHECK_THROWS(drift_curve(wv, 2.0, 0.0, 1.0, bad));
  const std::vector<double> big = {101};
  CHECK_THROWS(drift_curve(wv, 2.0, 0.0, 1.0, big));
}

TEST_CASE("predict preconditions and purity") {
  const MomentSummary ms{1e4, 1.1};
  CHECK_THROWS(predict(ms, 0.0, 0.5, 0.4));
  CHECK_THROWS(predict(ms, 1.0, 0.0, 0.4));
  CHECK_THROWS(predict(ms, 1.0, 0.5, 1.5));
  const auto a = to_json(predict(ms, 3.0, 0.5, 0.4));
  const auto b = to_json(predict(ms, 3.0, 0.5, 0.4));
  CHECK(a.dump() == b.dump());
  CHECK(a.at("leading_order_only").get<bool>());
}
