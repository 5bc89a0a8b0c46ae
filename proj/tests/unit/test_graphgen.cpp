#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "irg/graphgen.hpp"
#include "irg/rng.hpp"
#include "irg/stats.hpp"

using namespace irg;

namespace {

void check_simple(const GraphSample& g) {
  std::size_t deg = 0;
  for (std::size_t u = 0; u < g.n(); ++u) {
    const auto nb = g.neighbours(u);
    deg += nb.size();
    for (std::size_t k = 0; k < nb.size(); ++k) {
      REQUIRE(nb[k] != u);
      if (k) REQUIRE(nb[k - 1] < nb[k]);
      const auto back = g.neighbours(nb[k]);
      REQUIRE(std::binary_search(back.begin(), back.end(), static_cast<std::uint32_t>(u)));
      if (g.has_capacities()) REQUIRE(g.capacities(u)[k] <= g.p());
    }
  }
  REQUIRE(deg == 2 * g.edge_count());
}

double expected_edges(const WeightVector& wv, const EdgeLaw& law) {
  double s = 0.0;
  for (std::size_t i = 0; i < wv.size(); ++i) {
    for (std::size_t j = i + 1; j < wv.size(); ++j) s += law(wv[i], wv[j]);
  }
  return s;
}

double edge_variance(const WeightVector& wv, const EdgeLaw& law) {
  double s = 0.0;
  for (std::size_t i = 0; i < wv.size(); ++i) {
    for (std::size_t j = i + 1; j < wv.size(); ++j) {
      const double q = law(wv[i], wv[j]);
      s += q * (1 - q);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("model names") {
  CHECK(parse_model("poisson") == Model::Poisson);
  CHECK(parse_model("chung-lu") == Model::ChungLu);
  CHECK(parse_model("bdml") == Model::Bdml);
  CHECK(to_string(Model::ChungLu) == "chung-lu");
  CHECK_THROWS(parse_model("gnp"));
}

TEST_CASE("edge laws") {
  EdgeLaw poisson{Model::Poisson, 0.1, 3, 6};
  CHECK(poisson(3, 2) == doctest::Approx(1 - std::exp(-0.6)));
  EdgeLaw cl{Model::ChungLu, 0.1, 3, 6};
  CHECK(cl(3, 2) == doctest::Approx(0.6));
  CHECK(cl(30, 2) == 1.0);
  EdgeLaw bdml{Model::Bdml, 0.1, 3, 6};
  // x s / (n + x s) with x = 6, s = p ell = 0.6
  CHECK(bdml(3, 2) == doctest::Approx(3.6 / (3 + 3.6)));
}

TEST_CASE("infinite p gives the complete graph") {
  const auto wv = generate_constant(3, 1.0);
  for (auto g : {sample_reference(wv, kInfinity, Model::Poisson, 1), sample_fast(wv, kInfinity, Model::Poisson, 1),
                 sample_capacity_matrix(wv, 1).threshold(kInfinity)}) {
    CHECK(g.edge_count() == 3);
    check_simple(g);
  }
}

TEST_CASE("p = 0 gives the empty graph") {
  const auto wv = generate_pareto_iid(100, 1.0, 4.0, 3);
  CHECK(sample_fast(wv, 0.0, Model::Poisson, 1).edge_count() == 0);
  CHECK(sample_reference(wv, 0.0, Model::Poisson, 1).edge_count() == 0);
}

TEST_CASE("Erdos-Renyi edge density") {
  const std::size_t n = 30, reps = 10000;
  const auto wv = generate_constant(n, 1.0);
  const double p = 0.05, q = 1 - std::exp(-p);
  double total = 0.0;
  for (std::size_t r = 0; r < reps; ++r) total += sample_reference(wv, p, Model::Poisson, r).edge_count();
  const double trials = reps * n * (n - 1) / 2.0;
  CHECK(std::abs(total / trials - q) < 3.0 * std::sqrt(q * (1 - q) / trials));
}

TEST_CASE("expected edge count for weights (3,2,1) at p = 0.1") {
  const auto wv = WeightVector::from_values({3, 2, 1});
  const EdgeLaw law{Model::Poisson, 0.1, 3, 6};
  const double mean = expected_edges(wv, law);
  const double direct = (1 - std::exp(-0.6)) + (1 - std::exp(-0.3)) + (1 - std::exp(-0.2));
  CHECK(mean == doctest::Approx(direct).epsilon(1e-12));
  CHECK(mean == doctest::Approx(0.891639).epsilon(1e-5));
  const std::size_t reps = 100000;
  const double se = std::sqrt(edge_variance(wv, law) / reps);
  double ref = 0.0, fast = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    ref += sample_reference(wv, 0.1, Model::Poisson, r).edge_count();
    fast += sample_fast(wv, 0.1, Model::Poisson, r).edge_count();
  }
  CHECK(std::abs(ref / reps - mean) < 3 * se);
  CHECK(std::abs(fast / reps - mean) < 3 * se);
}

TEST_CASE("fast sampler matches the reference in edge-count law") {
  const auto wv = generate_pareto_iid(200, 2.0 / 3.0, 4.0, 5);
  const double p = critical_p(wv, 5.0);
  for (Model model : {Model::Poisson, Model::ChungLu, Model::Bdml}) {
    std::vector<std::int64_t> a, b;
    SamplerOptions opt;
    opt.strict_chung_lu = false;
    for (std::uint64_t r = 0; r < 1000; ++r) {
      a.push_back(static_cast<std::int64_t>(sample_fast(wv, p, model, derive_seed(1, {r}), opt).edge_count()));
      b.push_back(static_cast<std::int64_t>(sample_reference(wv, p, model, derive_seed(2, {r}), opt).edge_count()));
    }
    CHECK(stats::chi_square_two_sample(a, b).p_value > 0.001);
  }
}

TEST_CASE("fast sampler pair marginals") {
  // Every pair of a 6-vertex graph appears with its model probability.
  const auto wv = WeightVector::from_values({3.0, 2.0, 1.5, 1.0, 0.7, 0.5});
  const double p = 0.2;
  const std::size_t reps = 40000;
  for (Model model : {Model::Poisson, Model::ChungLu, Model::Bdml}) {
    const EdgeLaw law{model, p, 6.0, wv.ell()};
    std::vector<std::size_t> hits(36, 0);
    SamplerOptions opt;
    opt.strict_chung_lu = false;
    for (std::size_t r = 0; r < reps; ++r) {
      for (const auto& e : sample_fast(wv, p, model, r, opt).edges()) ++hits[e.u * 6 + e.v];
    }
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) {
        const double q = std::min(1.0, law(wv[i], wv[j]));
        const double se = std::sqrt(q * (1 - q) / reps);
        CHECK(std::abs(static_cast<double>(hits[i * 6 + j]) / reps - q) < 4 * se + 1e-12);
      }
    }
  }
}

TEST_CASE("fast sampler output does not depend on the thread count") {
  const auto wv = generate_pareto_iid(5000, 2.0 / 3.0, 4.0, 8);
  const double p = critical_p(wv, 3.0);
  SamplerOptions one, four;
  four.threads = 4;
  const auto a = sample_fast(wv, p, Model::Poisson, 99, one).edges();
  const auto b = sample_fast(wv, p, Model::Poisson, 99, four).edges();
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].u == b[k].u);
    CHECK(a[k].v == b[k].v);
    CHECK(a[k].capacity == b[k].capacity);
  }
}

TEST_CASE("graph invariants across models") {
  const auto wv = generate_pareto_iid(3000, 2.0 / 3.0, 4.0, 4);
  SamplerOptions opt;
  opt.strict_chung_lu = false;
  for (Model model : {Model::Poisson, Model::ChungLu, Model::Bdml}) {
    const auto g = sample_fast(wv, critical_p(wv, 2.0), model, 3, opt);
    check_simple(g);
    CHECK(g.has_capacities() == (model == Model::Poisson));
  }
}

TEST_CASE("strict Chung-Lu reports the offending pair") {
  const auto wv = WeightVector::from_values({10, 10, 1});
  try {
    sample_fast(wv, 0.05, Model::ChungLu, 1);
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
  }
  SamplerOptions lenient;
  lenient.strict_chung_lu = false;
  CHECK(sample_fast(wv, 0.05, Model::ChungLu, 1, lenient).edge_count() >= 1);
}

TEST_CASE("capacity thresholding is nested and has the right marginals") {
  const auto wv = WeightVector::from_values({2.0, 1.5, 1.0});
  const std::size_t reps = 100000;
  const double p = 0.3;
  std::vector<std::size_t> hits(9, 0);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto cm = sample_capacity_matrix(wv, r);
    const auto small = cm.threshold(p), big = cm.threshold(2 * p);
    for (const auto& e : small.edges()) {
      ++hits[e.u * 3 + e.v];
      const auto nb = big.neighbours(e.u);
      REQUIRE(std::binary_search(nb.begin(), nb.end(), e.v));
      REQUIRE(e.capacity == cm(e.u, e.v));
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double q = 1 - std::exp(-wv[i] * wv[j] * p);
      CHECK(std::abs(static_cast<double>(hits[i * 3 + j]) / reps - q) < 3 * std::sqrt(q * (1 - q) / reps));
    }
  }
}

TEST_CASE("present-edge capacities follow the truncated exponential") {
  // Two-phase construction (presence, then capacity given presence) against the full matrix.
  const auto wv = WeightVector::from_values({2.0, 1.5});
  const double p = 0.3;
  std::vector<double> fast, full;
  for (std::uint64_t r = 0; r < 40000; ++r) {
    for (const auto& e : sample_fast(wv, p, Model::Poisson, derive_seed(5, {r})).edges()) fast.push_back(e.capacity);
    const auto cm = sample_capacity_matrix(wv, derive_seed(6, {r}));
    if (cm(0, 1) <= p) full.push_back(cm(0, 1));
  }
  const double na = static_cast<double>(fast.size()), nb = static_cast<double>(full.size());
  const double crit = 1.63 * std::sqrt((na + nb) / (na * nb));  // 1% level
  CHECK(stats::ks_two_sample(fast, full) < crit);
}

TEST_CASE("edge lists are validated") {
  CHECK_THROWS(GraphSample::from_edges(3, 1.0, Model::Poisson, {{0, 0, 0.1}}, true));
  CHECK_THROWS(GraphSample::from_edges(3, 1.0, Model::Poisson, {{0, 1, 0.1}, {1, 0, 0.1}}, true));
  CHECK_THROWS(GraphSample::from_edges(3, 1.0, Model::Poisson, {{0, 3, 0.1}}, true));
  const auto g = GraphSample::from_edges(3, 1.0, Model::Poisson, {{2, 0, 0.1}}, true);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(1) == 0);
}

TEST_CASE("edge CSV round trip") {
  const auto wv = generate_pareto_iid(300, 1.0, 4.0, 2);
  const auto g = sample_fast(wv, critical_p(wv, 4.0), Model::Poisson, 7);
  std::stringstream ss;
  write_edge_csv(g, ss);
  const auto h = read_edge_csv(ss, g.n(), g.p(), Model::Poisson, 0);
  const auto a = g.edges(), b = h.edges();
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].u == b[k].u);
    CHECK(a[k].v == b[k].v);
    CHECK(a[k].capacity == b[k].capacity);
  }
  CHECK(h.has_capacities());
}

TEST_CASE("edge CSV without capacities gets seeded keys") {
  std::istringstream a("u,v,capacity\n0,1,\n1,2,\n");
  std::istringstream b("u,v,capacity\n0,1,\n1,2,\n");
  const auto g = read_edge_csv(a, 3, 1.0, Model::Poisson, 4);
  const auto h = read_edge_csv(b, 3, 1.0, Model::Poisson, 4);
  CHECK_FALSE(g.has_capacities());
  CHECK(g.edges()[0].capacity == h.edges()[0].capacity);
  std::istringstream bad("a,b\n0,1\n");
  CHECK_THROWS(read_edge_csv(bad, 3, 1.0, Model::Poisson, 0));
  std::istringstream range("u,v,capacity\n0,7,\n");
  CHECK_THROWS(read_edge_csv(range, 3, 1.0, Model::Poisson, 0));
}
