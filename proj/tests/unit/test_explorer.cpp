#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "irg/explorer.hpp"
#include "irg/rng.hpp"

using namespace irg;

namespace {

GraphSample graph(std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> e) {
  std::vector<Edge> edges;
  double c = 0.1;
  for (auto [u, v] : e) edges.push_back({u, v, c += 0.1});
  return GraphSample::from_edges(n, 1.0, Model::Poisson, edges, true);
}

std::vector<std::int64_t> v(std::initializer_list<std::int64_t> x) { return x; }

void check_trace_identities(const ExplorationTrace& t) {
  const std::size_t n = t.n();
  REQUIRE(t.lprime.size() == n + 1);
  REQUIRE(t.l.size() == n + 1);
  CHECK(t.lprime[0] == 1);
  CHECK(t.l[0] == 1);
  std::vector<std::uint32_t> sorted = t.order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i) REQUIRE(sorted[i] == i);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::int64_t inc = static_cast<std::int64_t>(t.children[i - 1]) - 1;
    REQUIRE(t.lprime[i] == t.lprime[i - 1] + inc);
    REQUIRE(t.l[i] == std::max<std::int64_t>(t.l[i - 1] + inc, 1));
    REQUIRE(t.z[i] == t.l[i] - t.lprime[i]);
    REQUIRE(t.z[i] >= t.z[i - 1]);
  }
  const std::size_t child_sum = std::accumulate(t.children.begin(), t.children.end(), std::size_t{0});
  CHECK(child_sum == n - t.component_bounds.size());
  std::size_t next = 1;
  for (auto [a, b] : t.component_bounds) {
    REQUIRE(a == next);
    REQUIRE(b >= a);
    next = b + 1;
  }
  CHECK(next == n + 1);
}

}  // namespace

TEST_CASE("triangle") {
  const auto g = graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto wv = generate_constant(3, 1.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = explore(g, wv, seed);
    CHECK(t.children == std::vector<std::uint32_t>{2, 0, 0});
    CHECK(t.lprime == v({1, 2, 1, 0}));
    CHECK(t.component_bounds.size() == 1);
    CHECK(t.surplus_edges.size() == 1);
    check_trace_identities(t);
    const auto cs = component_stats(t, g, wv);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].size == 3);
    CHECK(cs[0].surplus == 1);
    CHECK(cs[0].weight == 3.0);
    // Increment at step i counts neighbours explored after step i: 2, 1, 0.
    CHECK(l0_trace(t, g) == v({1, 2, 2, 1}));
  }
}

TEST_CASE("path of three vertices, both walk shapes") {
  const auto g = graph(3, {{0, 1}, {1, 2}});
  const auto wv = generate_constant(3, 1.0);
  bool centre = false, leaf = false;
  for (std::uint64_t seed = 0; seed < 200 && !(centre && leaf); ++seed) {
    const auto t = explore(g, wv, seed);
    check_trace_identities(t);
    CHECK(component_stats(t, g, wv)[0].surplus == 0);
    if (t.order[0] == 1) {
      centre = true;
      CHECK(t.children == std::vector<std::uint32_t>{2, 0, 0});
      CHECK(t.lprime == v({1, 2, 1, 0}));
    } else {
      leaf = true;
      CHECK(t.children == std::vector<std::uint32_t>{1, 1, 0});
      CHECK(t.lprime == v({1, 1, 1, 0}));
    }
  }
  CHECK(centre);
  CHECK(leaf);
}

TEST_CASE("empty graph") {
  const auto wv = WeightVector::from_values({4, 3, 2, 1});
  const auto g = GraphSample::from_edges(4, 0.0, Model::Poisson, {}, true);
  const auto t = explore(g, wv, 1);
  CHECK(t.component_bounds.size() == 4);
  CHECK(t.children == std::vector<std::uint32_t>{0, 0, 0, 0});
  CHECK(t.lprime == v({1, 0, -1, -2, -3}));
  CHECK(t.l == v({1, 1, 1, 1, 1}));
  CHECK(l0_trace(t, g) == v({1, 0, -1, -2, -3}));
  check_trace_identities(t);
}

TEST_CASE("roots are drawn proportionally to weight") {
  const auto wv = WeightVector::from_values({3, 2, 1});
  const auto g = GraphSample::from_edges(3, 0.0, Model::Poisson, {}, true);
  const std::size_t reps = 30000;
  std::size_t first = 0, second_is_middle = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto t = explore(g, wv, r);
    first += t.order[0] == 0;
    second_is_middle += t.order[1] == 1;
  }
  const double p1 = 0.5;
  CHECK(std::abs(static_cast<double>(first) / reps - p1) < 3 * std::sqrt(p1 * (1 - p1) / reps));
  // P(v(2) = weight-2 vertex) = 1/2 * 2/3 + 1/6 * 2/5 = 2/5
  const double p2 = 0.4;
  CHECK(std::abs(static_cast<double>(second_is_middle) / reps - p2) < 3 * std::sqrt(p2 * (1 - p2) / reps));
}

TEST_CASE("children are queued by increasing capacity") {
  std::vector<Edge> edges = {{0, 1, 0.5}, {0, 2, 0.1}, {0, 3, 0.3}};
  const auto g = GraphSample::from_edges(4, 1.0, Model::Poisson, edges, true);
  const auto wv = WeightVector::from_values({100, 1e-6, 1e-6, 1e-6});
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto t = explore(g, wv, s);
    if (t.order[0] != 0) continue;
    CHECK(t.order == std::vector<std::uint32_t>{0, 2, 3, 1});
  }
}

TEST_CASE("two disjoint edges") {
  const auto g = graph(4, {{0, 1}, {2, 3}});
  const auto wv = generate_constant(4, 1.0);
  const auto cs = component_stats(explore(g, wv, 3), g, wv);
  REQUIRE(cs.size() == 2);
  for (const auto& c : cs) {
    CHECK(c.size == 2);
    CHECK(c.weight == 2.0);
    CHECK(c.surplus == 0);
  }
}

TEST_CASE("structural invariants on random small graphs") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Stream s(derive_seed(77, {seed}));
    const std::size_t n = 1 + s.below(8);
    const double density = s.uniform();
    std::vector<Edge> edges;
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        if (s.uniform() < density) edges.push_back({i, j, s.uniform()});
      }
    }
    std::vector<double> w(n);
    for (auto& x : w) x = 0.2 + s.uniform();
    const auto wv = WeightVector::from_values(w);
    const auto g = GraphSample::from_edges(n, 1.0, Model::Poisson, edges, true);
    const auto t = explore(g, wv, seed);
    check_trace_identities(t);
    const auto cs = component_stats(t, g, wv);
    const auto pos = t.positions();

    // Adjacency recount of internal edges per component.
    for (const auto& c : cs) {
      std::size_t m = 0;
      for (const auto& e : edges) {
        if (pos[e.u] >= c.start_index && pos[e.u] <= c.end_index) {
          REQUIRE(pos[e.v] >= c.start_index);
          REQUIRE(pos[e.v] <= c.end_index);
          ++m;
        }
      }
      REQUIRE(c.surplus == m - c.size + 1);
    }
    // Tree edges plus surplus edges account for every edge.
    const std::size_t tree = std::accumulate(t.children.begin(), t.children.end(), std::size_t{0});
    REQUIRE(tree + t.surplus_edges.size() == edges.size());
    REQUIRE(tree == n - cs.size());
    // New minima of L' are exactly the component ends.
    std::vector<bool> is_end(n + 1, false);
    for (auto [a, b] : t.component_bounds) is_end[b] = true;
    std::int64_t low = t.lprime[0];
    for (std::size_t i = 1; i <= n; ++i) {
      REQUIRE((t.lprime[i] < low) == is_end[i]);
      low = std::min(low, t.lprime[i]);
    }
    // L0 dominates L'.
    const auto l0 = l0_trace(t, g);
    for (std::size_t i = 0; i <= n; ++i) REQUIRE(l0[i] >= t.lprime[i]);
  }
}

TEST_CASE("largest component ties go to the earliest") {
  auto mk = [](std::vector<std::size_t> sizes) {
    std::vector<ComponentStats> out;
    for (auto s : sizes) out.push_back({s, 0.0, 0, 0, 0});
    return out;
  };
  CHECK(largest_component(mk({3, 3, 2})).first == 0);
  CHECK(largest_component(mk({1, 5, 2})).first == 1);
  CHECK(largest_component(mk({1, 5, 2})).second.size == 5);
  CHECK(largest_component(mk({4})).first == 0);
  CHECK_THROWS(largest_component(mk({})));
}

TEST_CASE("explore rejects mismatched inputs") {
  const auto g = graph(3, {{0, 1}});
  CHECK_THROWS(explore(g, generate_constant(4, 1.0), 1));
}

TEST_CASE("trace and component files") {
  const auto dir = std::filesystem::temp_directory_path() / "irg_explorer_test";
  std::filesystem::create_directories(dir);
  const auto g = graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto wv = generate_constant(3, 1.0);
  const auto t = explore(g, wv, 1);
  write_trace_jsonl(t, dir / "trace.jsonl");
  write_components_csv(component_stats(t, g, wv), dir / "components.csv");
  write_rescaled_csv(t, dir / "rescaled.csv");
  std::ifstream a(dir / "trace.jsonl"), b(dir / "components.csv"), c(dir / "rescaled.csv");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(a, line)) {
    ++lines;
    CHECK(line.find("\"lprime\"") != std::string::npos);
  }
  CHECK(lines == 3);
  std::getline(b, line);
  CHECK(line == "component_id,size,weight,surplus,start,end");
  std::getline(b, line);
  CHECK(line == "0,3,3,1,1,3");
  std::getline(c, line);
  CHECK(line == "t,l");
}
