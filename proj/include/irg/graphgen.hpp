#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irg/weights.hpp"

namespace irg {

enum class Model { Poisson, ChungLu, Bdml };

std::string_view to_string(Model m);
Model parse_model(std::string_view s);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Presence probability of edge {i, j} for weights wi, wj at parameter p.
///
///   Poisson:  1 - exp(-wi wj p)
///   ChungLu:  min(wi wj p, 1)
///   Bdml:     wi wj s / (n + wi wj s),  s = p * ell
///
/// Each is non-decreasing in wi*wj, which the skip sampler relies on.
struct EdgeLaw {
  Model model = Model::Poisson;
  double p = 0.0;
  double n = 0.0;
  double ell = 0.0;

  double operator()(double wi, double wj) const;
};

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double capacity = 0.0;
};

/// Simple undirected graph in compressed sparse row form.
///
/// Neighbour lists are sorted by vertex index. capacity_ is aligned with
/// neighbours_, so both directions of an edge carry the same value. For the
/// Poisson model these are the exponential edge capacities; for the other
/// models they are i.i.d. uniform keys that only order children during
/// exploration.
class GraphSample {
 public:
  GraphSample() = default;

  /// Builds from an edge list; rejects self-loops, duplicates and out-of-range ids.
  static GraphSample from_edges(std::size_t n, double p, Model model, std::vector<Edge> edges,
                                bool has_capacities);

  std::size_t n() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbours_.size() / 2; }
  double p() const { return p_; }
  Model model() const { return model_; }
  bool has_capacities() const { return has_capacities_; }

  std::span<const std::uint32_t> neighbours(std::size_t v) const {
    return {neighbours_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const double> capacities(std::size_t v) const {
    return {capacity_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Edges with u < v, ordered by (u, v).
  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> neighbours_;
  std::vector<double> capacity_;
  double p_ = 0.0;
  Model model_ = Model::Poisson;
  bool has_capacities_ = false;
};

/// p_f = (ell^(1/3) + f) / ell^(4/3).
double critical_p(double ell, double f);
double critical_p(const WeightVector& wv, double f);

struct SamplerOptions {
  /// sample_reference refuses larger graphs (quadratic cost).
  std::size_t reference_max_n = 20000;
  /// ChungLu: throw if some pair has wi wj p > 1; otherwise clip at 1.
  bool strict_chung_lu = true;
  /// Worker threads for sample_fast. Output does not depend on this.
  unsigned threads = 1;
};

/// Pair-by-pair Bernoulli sampler; the distributional reference for sample_fast.
GraphSample sample_reference(const WeightVector& wv, double p, Model model, std::uint64_t seed,
                             const SamplerOptions& opt = {});

/// Per-row geometric skipping with a refreshed majorant, O(n + m) expected.
GraphSample sample_fast(const WeightVector& wv, double p, Model model, std::uint64_t seed,
                        const SamplerOptions& opt = {});

/// Full set of exponential capacities E_ij ~ Exp(wi wj), i < j.
class CapacityMatrix {
 public:
  static constexpr std::size_t kDefaultMaxN = 3000;

  std::size_t n() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const;

  /// Graph of all pairs with capacity <= p; nested in p for a fixed matrix.
  GraphSample threshold(double p) const;

  friend CapacityMatrix sample_capacity_matrix(const WeightVector&, std::uint64_t, std::size_t);

 private:
  std::size_t index(std::size_t i, std::size_t j) const;
  std::size_t n_ = 0;
  std::vector<double> e_;
};

CapacityMatrix sample_capacity_matrix(const WeightVector& wv, std::uint64_t seed,
                                      std::size_t max_n = CapacityMatrix::kDefaultMaxN);

/// CSV "u,v,capacity"; capacity is empty when the graph carries none.
void write_edge_csv(const GraphSample& g, const std::filesystem::path& path);
void write_edge_csv(const GraphSample& g, std::ostream& out);

/// Reads an edge CSV. Missing capacities are replaced by uniform ordering keys
/// drawn from `seed`; the graph then reports has_capacities() == false.
GraphSample read_edge_csv(const std::filesystem::path& path, std::size_t n, double p, Model model,
                          std::uint64_t seed);
GraphSample read_edge_csv(std::istream& in, std::size_t n, double p, Model model, std::uint64_t seed);

}  // namespace irg
