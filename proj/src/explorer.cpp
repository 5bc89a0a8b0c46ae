#include "irg/explorer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "irg/rng.hpp"
#include "irg/sum_tree.hpp"

namespace irg {

namespace {

constexpr std::uint64_t kTagRoots = 0x726f6f74ULL;

enum class State : std::uint8_t { Undiscovered, Queued, Explored };

}  // namespace

std::vector<std::size_t> ExplorationTrace::positions() const {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k + 1;
  return pos;
}

ExplorationTrace explore(const GraphSample& g, const WeightVector& wv, std::uint64_t seed) {
  const std::size_t n = g.n();
  if (wv.size() != n) {
    throw std::invalid_argument("explore: graph has " + std::to_string(n) + " vertices but " +
                                std::to_string(wv.size()) + " weights were given");
  }
  ExplorationTrace t;
  t.order.reserve(n);
  t.children.reserve(n);
  t.lprime.reserve(n + 1);
  t.l.reserve(n + 1);
  t.z.reserve(n + 1);
  t.lprime.push_back(1);
  t.l.push_back(1);
  t.z.push_back(0);

  SumTree undiscovered(wv.values());
  Stream rng(derive_seed(seed, {kTagRoots}));
  std::vector<State> state(n, State::Undiscovered);
  std::vector<std::size_t> pos(n, 0);
  std::vector<std::pair<double, std::uint32_t>> found;

  auto discover = [&](std::uint32_t v) {
    state[v] = State::Queued;
    t.order.push_back(v);
    pos[v] = t.order.size();
    undiscovered.set(v, 0.0);
  };

  std::size_t component_start = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (t.order.size() < i) {
      // Queue exhausted: size-biased restart among the undiscovered vertices.
      discover(static_cast<std::uint32_t>(undiscovered.find(rng.uniform())));
      component_start = i;
    }
    const std::uint32_t v = t.order[i - 1];
    auto nb = g.neighbours(v);
    auto cap = g.capacities(v);
    found.clear();
    for (std::size_t k = 0; k < nb.size(); ++k) {
      const std::uint32_t u = nb[k];
      if (state[u] == State::Undiscovered) {
        found.emplace_back(cap[k], u);
      } else if (state[u] == State::Queued) {
        t.surplus_edges.emplace_back(i, pos[u]);
      }
    }
    std::sort(found.begin(), found.end());
    for (const auto& [c, u] : found) discover(u);
    state[v] = State::Explored;

    const auto c = static_cast<std::int64_t>(found.size());
    t.children.push_back(static_cast<std::uint32_t>(found.size()));
    t.lprime.push_back(t.lprime.back() + c - 1);
    t.l.push_back(std::max<std::int64_t>(t.l.back() + c - 1, 1));
    t.z.push_back(t.l.back() - t.lprime.back());
    if (t.order.size() == i) t.component_bounds.emplace_back(component_start, i);
  }
  return t;
}

std::vector<ComponentStats> component_stats(const ExplorationTrace& trace, const GraphSample& g,
                                            const WeightVector& wv) {
  if (trace.n() != g.n() || wv.size() != g.n()) {
    throw std::invalid_argument("component_stats: trace, graph and weights disagree on n");
  }
  std::vector<ComponentStats> out;
  out.reserve(trace.component_bounds.size());
  std::size_t next_surplus = 0;
  for (const auto& [start, end] : trace.component_bounds) {
    ComponentStats cs;
    cs.start_index = start;
    cs.end_index = end;
    cs.size = end - start + 1;
    std::size_t degree_sum = 0;
    for (std::size_t i = start; i <= end; ++i) {
      const auto v = trace.order[i - 1];
      cs.weight += wv[v];
      degree_sum += g.degree(v);
    }
    const std::size_t internal_edges = degree_sum / 2;
    if (internal_edges + 1 < cs.size) {
      throw std::logic_error("component_stats: component is not connected");
    }
    cs.surplus = internal_edges + 1 - cs.size;

    // Surplus edges are recorded in step order, so each component owns a contiguous run.
    std::size_t counted = 0;
    while (next_surplus < trace.surplus_edges.size() &&
           trace.surplus_edges[next_surplus].first <= end) {
      const auto [a, b] = trace.surplus_edges[next_surplus];
      if (a < start || b > end) throw std::logic_error("component_stats: surplus edge leaves its component");
      ++counted;
      ++next_surplus;
    }
    if (counted != cs.surplus) {
      throw std::logic_error("component_stats: surplus mismatch in component starting at step " +
                             std::to_string(start) + " (adjacency " + std::to_string(cs.surplus) +
                             ", walk " + std::to_string(counted) + ")");
    }
    out.push_back(cs);
  }
  return out;
}

std::vector<std::int64_t> l0_trace(const ExplorationTrace& trace, const GraphSample& g) {
  const std::size_t n = trace.n();
  const auto pos = trace.positions();
  std::vector<std::int64_t> l0(n + 1);
  l0[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    std::int64_t later = 0;
    for (auto u : g.neighbours(trace.order[i - 1])) later += pos[u] > i ? 1 : 0;
    l0[i] = l0[i - 1] + later - 1;
  }
  return l0;
}

std::pair<std::size_t, ComponentStats> largest_component(std::span<const ComponentStats> stats) {
  if (stats.empty()) throw std::invalid_argument("largest_component: empty component list");
  std::size_t best = 0;
  for (std::size_t k = 1; k < stats.size(); ++k) {
    if (stats[k].size > stats[best].size) best = k;
  }
  return {best, stats[best]};
}

void write_trace_jsonl(const ExplorationTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t i = 1; i <= trace.n(); ++i) {
    out << "{\"i\":" << i << ",\"v\":" << trace.order[i - 1] << ",\"c\":" << trace.children[i - 1]
        << ",\"lprime\":" << trace.lprime[i] << ",\"l\":" << trace.l[i] << "}\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_components_csv(std::span<const ComponentStats> stats, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "component_id,size,weight,surplus,start,end\n";
  char buf[64];
  for (std::size_t k = 0; k < stats.size(); ++k) {
    const auto& c = stats[k];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, c.weight);
    out << k << ',' << c.size << ',' << std::string_view(buf, ptr - buf) << ',' << c.surplus << ','
        << c.start_index << ',' << c.end_index << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_rescaled_csv(const ExplorationTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const double n = static_cast<double>(trace.n());
  const double time_scale = std::cbrt(n * n);
  const double space_scale = std::cbrt(n);
  out << "t,l\n";
  char a[64], b[64];
  for (std::size_t i = 0; i <= trace.n(); ++i) {
    auto ra = std::to_chars(a, a + sizeof a, static_cast<double>(i) / time_scale);
    auto rb = std::to_chars(b, b + sizeof b, static_cast<double>(trace.l[i]) / space_scale);
    out << std::string_view(a, ra.ptr - a) << ',' << std::string_view(b, rb.ptr - b) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace irg
