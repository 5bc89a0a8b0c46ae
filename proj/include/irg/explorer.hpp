#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "irg/graphgen.hpp"
#include "irg/weights.hpp"

namespace irg {

/// Output of the breadth-first walk.
///
/// Steps are numbered 1..n as in the walk itself: order[i-1] is the vertex
/// explored at step i and children[i-1] its number of children. The process
/// arrays have n + 1 entries, index i holding the value after step i.
struct ExplorationTrace {
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> children;
  std::vector<std::int64_t> lprime;  ///< L'_0 = 1, L'_{i+1} = L'_i + c(i+1) - 1
  std::vector<std::int64_t> l;       ///< L_0 = 1, L_{i+1} = max(L_i + c(i+1) - 1, 1)
  std::vector<std::int64_t> z;       ///< Z(i) = L_i - L'_i
  /// Inclusive step ranges [start, end] of each component, in discovery order.
  std::vector<std::pair<std::size_t, std::size_t>> component_bounds;
  /// Non-tree edges as step pairs (i, j), i < j: found while exploring v(i), v(j) already queued.
  std::vector<std::pair<std::size_t, std::size_t>> surplus_edges;

  std::size_t n() const { return order.size(); }
  /// position[v] = step at which v was explored (1-based).
  std::vector<std::size_t> positions() const;
};

struct ComponentStats {
  std::size_t size = 0;
  double weight = 0.0;
  std::size_t surplus = 0;
  std::size_t start_index = 0;  ///< first step (1-based, inclusive)
  std::size_t end_index = 0;    ///< last step (inclusive)
};

/// Runs the walk: roots are drawn proportionally to weight among undiscovered
/// vertices; children are queued in increasing capacity order (ties by index).
ExplorationTrace explore(const GraphSample& g, const WeightVector& wv, std::uint64_t seed);

/// One record per component in discovery order. Throws std::logic_error if
/// the adjacency-based surplus disagrees with the recorded surplus edges.
std::vector<ComponentStats> component_stats(const ExplorationTrace& trace, const GraphSample& g,
                                            const WeightVector& wv);

/// L0_0 = 1, increment at step i: (# neighbours of v(i) explored after step i) - 1.
std::vector<std::int64_t> l0_trace(const ExplorationTrace& trace, const GraphSample& g);

/// Largest component, earliest discovered on ties. Requires a non-empty list.
std::pair<std::size_t, ComponentStats> largest_component(std::span<const ComponentStats> stats);

/// JSON Lines, one {i, v, c, lprime, l} record per step.
void write_trace_jsonl(const ExplorationTrace& trace, const std::filesystem::path& path);
/// CSV "component_id,size,weight,surplus,start,end".
void write_components_csv(std::span<const ComponentStats> stats, const std::filesystem::path& path);
/// (i / n^(2/3), L_i / n^(1/3)) pairs for plotting.
void write_rescaled_csv(const ExplorationTrace& trace, const std::filesystem::path& path);

}  // namespace irg
