#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "irg/rng.hpp"
#include "irg/stats.hpp"
#include "irg/sum_tree.hpp"

using namespace irg;

TEST_CASE("stream is a pure function of key and counter") {
  Stream a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  CHECK(a.counter() == 100);
}

TEST_CASE("derived seeds differ per tag and are deterministic") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 50; ++i) {
    for (std::uint64_t j = 0; j < 50; ++j) seen.insert(derive_seed(7, {i, j}));
  }
  CHECK(seen.size() == 2500);
  CHECK(derive_seed(7, {1, 2}) == derive_seed(7, {1, 2}));
  CHECK(derive_seed(7, {1, 2}) != derive_seed(7, {2, 1}));
}

TEST_CASE("uniform draws stay in range and have the right mean") {
  Stream s(1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST_CASE("exponential draws have mean 1/rate") {
  Stream s(2);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += s.exponential(4.0);
  CHECK(std::abs(sum / n - 0.25) < 3.0 * 0.25 / std::sqrt(n));
}

TEST_CASE("sum tree totals, updates and search") {
  std::vector<double> w = {1.0, 0.0, 2.0, 3.0, 0.0};
  SumTree t(w);
  CHECK(t.size() == 5);
  CHECK(t.total() == doctest::Approx(6.0));
  CHECK(t.find(0.0) == 0);
  CHECK(t.find(0.99 / 6.0) == 0);
  CHECK(t.find(1.01 / 6.0) == 2);
  CHECK(t.find(3.01 / 6.0) == 3);
  CHECK(t.find(0.999999) == 3);

  t.set(3, 0.0);
  CHECK(t.total() == doctest::Approx(3.0));
  for (double u : {0.0, 0.3, 0.5, 0.9, 0.999999}) CHECK(t.value(t.find(u)) > 0.0);

  t.set(0, 0.0);
  t.set(2, 0.0);
  CHECK(t.total() == 0.0);
  CHECK_THROWS(SumTree(std::vector<double>{1.0, -1.0}));
}

TEST_CASE("sum tree sampling frequencies follow the weights") {
  std::vector<double> w = {1.0, 2.0, 3.0, 4.0};
  SumTree t(w);
  Stream s(3);
  std::vector<std::size_t> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[t.find(s.uniform())];
  const std::vector<double> probs = {0.1, 0.2, 0.3, 0.4};
  const auto r = stats::chi_square_gof(counts, probs);
  CHECK(r.p_value > 0.001);
}

TEST_CASE("wilson interval contains the estimate") {
  for (std::size_t k : {0u, 1u, 5u, 19u, 20u}) {
    const auto w = stats::wilson_interval(k, 20);
    CHECK(w.lo <= w.estimate);
    CHECK(w.estimate <= w.hi);
    CHECK(w.lo >= 0.0);
    CHECK(w.hi <= 1.0);
  }
  const auto w = stats::wilson_interval(10, 100);
  CHECK(w.lo == doctest::Approx(0.0552).epsilon(0.01));
  CHECK(w.hi == doctest::Approx(0.1744).epsilon(0.01));
}

TEST_CASE("chi-square tail matches known quantiles") {
  CHECK(stats::chi_square_sf(3.841458820694124, 1.0) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(stats::chi_square_sf(18.307038053275146, 10.0) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(stats::chi_square_sf(0.0, 3.0) == 1.0);
}

TEST_CASE("two-sample chi-square separates different laws") {
  Stream s(4);
  std::vector<std::int64_t> a, b, c;
  for (int i = 0; i < 5000; ++i) {
    a.push_back(static_cast<std::int64_t>(s.below(6)));
    b.push_back(static_cast<std::int64_t>(s.below(6)));
    c.push_back(static_cast<std::int64_t>(s.below(5)));
  }
  CHECK(stats::chi_square_two_sample(a, b).p_value > 0.001);
  CHECK(stats::chi_square_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("ks statistic") {
  CHECK(stats::ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(stats::ks_two_sample({1, 2}, {3, 4}) == 1.0);
  CHECK(stats::ks_two_sample({1, 3}, {2, 4}) == doctest::Approx(0.5));
}

TEST_CASE("linear fit recovers a line") {
  std::vector<double> x = {0, 1, 2, 3}, y = {1, 3, 5, 7};
  const auto f = stats::linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK_THROWS(stats::linear_fit(std::vector<double>{1, 1}, std::vector<double>{1, 2}));
}

TEST_CASE("isotonic non-increasing fit pools violators") {
  std::vector<double> y = {5, 3, 4, 1}, w = {1, 1, 1, 1};
  const auto fit = stats::isotonic_nonincreasing(y, w);
  REQUIRE(fit.size() == 4);
  CHECK(fit[0] == 5);
  CHECK(fit[1] == doctest::Approx(3.5));
  CHECK(fit[2] == doctest::Approx(3.5));
  CHECK(fit[3] == 1);
  std::vector<double> mono = {4, 3, 2, 1};
  CHECK(stats::isotonic_nonincreasing(mono, w) == mono);
}

TEST_CASE("median and mean") {
  CHECK(stats::median({3, 1, 2}) == 2);
  CHECK(stats::median({4, 1, 2, 3}) == 2.5);
  const std::vector<double> x = {1, 2, 3, 4};
  const auto m = stats::mean_se(x);
  CHECK(m.mean == 2.5);
  CHECK(m.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
}
