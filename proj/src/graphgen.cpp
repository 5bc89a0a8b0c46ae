#include "irg/graphgen.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "irg/rng.hpp"

namespace irg {

namespace {

constexpr std::uint64_t kTagFast = 0x66617374ULL;
constexpr std::uint64_t kTagReference = 0x72656665ULL;
constexpr std::uint64_t kTagMatrix = 0x6d617478ULL;
constexpr std::uint64_t kTagCsvKeys = 0x6373766bULL;

EdgeLaw make_law(const WeightVector& wv, double p, Model model, const SamplerOptions& opt) {
  if (!(p >= 0.0)) throw std::invalid_argument("edge parameter p must be >= 0");
  if (wv.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("too many vertices");
  }
  EdgeLaw law{model, p, static_cast<double>(wv.size()), wv.ell()};
  if (model == Model::ChungLu && opt.strict_chung_lu && wv.size() >= 2 && p > 0.0) {
    // Weights are sorted, so the largest pair product is w0 * w1.
    if (wv[0] * wv[1] * p > 1.0) {
      throw std::domain_error("chung-lu: pair (0, 1) has w_i w_j p = " +
                              std::to_string(wv[0] * wv[1] * p) + " > 1");
    }
  }
  return law;
}

/// Capacity of a present edge. Poisson: Exp(lambda) conditioned on <= p.
double draw_capacity(Stream& rng, Model model, double lambda, double p) {
  if (model != Model::Poisson) {
    return std::isfinite(p) ? rng.uniform_open() * p : rng.uniform_open();
  }
  const double u = rng.uniform_open();
  if (!std::isfinite(p)) return -std::log(u) / lambda;
  // Inverse CDF of the truncated law: F(x) = (1 - e^{-lambda x}) / (1 - e^{-lambda p}).
  const double mass = -std::expm1(-lambda * p);
  const double x = -std::log1p(-u * mass) / lambda;
  return std::min(x, p);
}

void sample_row_fast(const WeightVector& wv, const EdgeLaw& law, std::size_t i, std::uint64_t seed,
                     std::vector<Edge>& out) {
  const std::size_t n = wv.size();
  const double wi = wv[i];
  Stream rng(derive_seed(seed, {kTagFast, i}));
  std::size_t j = i + 1;
  while (j < n) {
    // q is non-increasing in j, so q(wi, w_j) bounds every later pair in the row.
    const double qbar = law(wi, wv[j]);
    if (!(qbar > 0.0)) break;
    if (qbar < 1.0) {
      const double skip = std::floor(std::log(rng.uniform_open()) / std::log1p(-qbar));
      if (skip >= static_cast<double>(n - j)) break;
      j += static_cast<std::size_t>(skip);
    }
    const double q = law(wi, wv[j]);
    if (q >= qbar || rng.uniform() * qbar < q) {
      out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                     draw_capacity(rng, law.model, wi * wv[j], law.p)});
    }
    ++j;
  }
}

}  // namespace

std::string_view to_string(Model m) {
  switch (m) {
    case Model::Poisson: return "poisson";
    case Model::ChungLu: return "chung-lu";
    case Model::Bdml: return "bdml";
  }
  return "?";
}

Model parse_model(std::string_view s) {
  if (s == "poisson") return Model::Poisson;
  if (s == "chung-lu" || s == "chunglu" || s == "chung_lu") return Model::ChungLu;
  if (s == "bdml") return Model::Bdml;
  throw std::invalid_argument("unknown model '" + std::string(s) + "' (poisson|chung-lu|bdml)");
}

double EdgeLaw::operator()(double wi, double wj) const {
  const double x = wi * wj;
  switch (model) {
    case Model::Poisson:
      if (!std::isfinite(p)) return 1.0;
      return -std::expm1(-x * p);
    case Model::ChungLu:
      return std::min(x * p, 1.0);
    case Model::Bdml: {
      const double y = x * p * ell;
      if (!std::isfinite(y)) return 1.0;
      return y / (n + y);
    }
  }
  return 0.0;
}

GraphSample GraphSample::from_edges(std::size_t n, double p, Model model, std::vector<Edge> edges,
                                    bool has_capacities) {
  GraphSample g;
  g.p_ = p;
  g.model_ = model;
  g.has_capacities_ = has_capacities;
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.neighbours_.resize(g.offsets_[n]);
  g.capacity_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges) {
    g.neighbours_[fill[e.u]] = e.v;
    g.capacity_[fill[e.u]++] = e.capacity;
    g.neighbours_[fill[e.v]] = e.u;
    g.capacity_[fill[e.v]++] = e.capacity;
  }
  std::vector<std::pair<std::uint32_t, double>> scratch;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t b = g.offsets_[v], e = g.offsets_[v + 1];
    if (std::is_sorted(g.neighbours_.begin() + b, g.neighbours_.begin() + e)) {
      for (std::size_t k = b + 1; k < e; ++k) {
        if (g.neighbours_[k] == g.neighbours_[k - 1]) {
          throw std::invalid_argument("duplicate edge {" + std::to_string(v) + ", " +
                                      std::to_string(g.neighbours_[k]) + "}");
        }
      }
      continue;
    }
    scratch.clear();
    for (std::size_t k = b; k < e; ++k) scratch.emplace_back(g.neighbours_[k], g.capacity_[k]);
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t k = b; k < e; ++k) {
      g.neighbours_[k] = scratch[k - b].first;
      g.capacity_[k] = scratch[k - b].second;
      if (k > b && g.neighbours_[k] == g.neighbours_[k - 1]) {
        throw std::invalid_argument("duplicate edge {" + std::to_string(v) + ", " +
                                    std::to_string(g.neighbours_[k]) + "}");
      }
    }
  }
  return g;
}

std::vector<Edge> GraphSample::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < n(); ++u) {
    auto nb = neighbours(u);
    auto cap = capacities(u);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] > u) out.push_back({static_cast<std::uint32_t>(u), nb[k], cap[k]});
    }
  }
  return out;
}

double critical_p(double ell, double f) {
  if (!(ell > 0.0)) throw std::invalid_argument("critical_p: ell must be positive");
  const double p = (std::cbrt(ell) + f) / (ell * std::cbrt(ell));
  if (!(p > 0.0)) throw std::domain_error("critical_p: f <= -ell^(1/3) gives p <= 0");
  return p;
}

double critical_p(const WeightVector& wv, double f) { return critical_p(wv.ell(), f); }

GraphSample sample_reference(const WeightVector& wv, double p, Model model, std::uint64_t seed,
                             const SamplerOptions& opt) {
  const std::size_t n = wv.size();
  if (n > opt.reference_max_n) {
    throw std::invalid_argument("sample_reference: n = " + std::to_string(n) + " exceeds the cap of " +
                                std::to_string(opt.reference_max_n) + "; use sample_fast");
  }
  const EdgeLaw law = make_law(wv, p, model, opt);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    Stream rng(derive_seed(seed, {kTagReference, i}));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform() < law(wv[i], wv[j])) {
        edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                         draw_capacity(rng, model, wv[i] * wv[j], p)});
      }
    }
  }
  return GraphSample::from_edges(n, p, model, std::move(edges), model == Model::Poisson);
}

GraphSample sample_fast(const WeightVector& wv, double p, Model model, std::uint64_t seed,
                        const SamplerOptions& opt) {
  const std::size_t n = wv.size();
  const EdgeLaw law = make_law(wv, p, model, opt);
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(n)));

  std::vector<std::vector<Edge>> parts(threads);
  auto work = [&](unsigned t) {
    // Contiguous row ranges keep the concatenated output ordered by row.
    const std::size_t lo = n * t / threads, hi = n * (t + 1) / threads;
    for (std::size_t i = lo; i < hi; ++i) sample_row_fast(wv, law, i, seed, parts[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  std::vector<Edge> edges;
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  edges.reserve(total);
  for (auto& part : parts) edges.insert(edges.end(), part.begin(), part.end());
  return GraphSample::from_edges(n, p, model, std::move(edges), model == Model::Poisson);
}

std::size_t CapacityMatrix::index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  // Row-major strict upper triangle.
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

double CapacityMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_) throw std::out_of_range("capacity index");
  return e_[index(i, j)];
}

GraphSample CapacityMatrix::threshold(double p) const {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double e = e_[index(i, j)];
      if (e <= p) edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), e});
    }
  }
  return GraphSample::from_edges(n_, p, Model::Poisson, std::move(edges), true);
}

CapacityMatrix sample_capacity_matrix(const WeightVector& wv, std::uint64_t seed, std::size_t max_n) {
  const std::size_t n = wv.size();
  if (n > max_n) {
    throw std::invalid_argument("capacity matrix: n = " + std::to_string(n) + " exceeds the cap of " +
                                std::to_string(max_n) + "; use sample_fast for large graphs");
  }
  CapacityMatrix m;
  m.n_ = n;
  m.e_.resize(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    Stream rng(derive_seed(seed, {kTagMatrix, i}));
    for (std::size_t j = i + 1; j < n; ++j) m.e_[m.index(i, j)] = rng.exponential(wv[i] * wv[j]);
  }
  return m;
}

void write_edge_csv(const GraphSample& g, std::ostream& out) {
  out << "u,v,capacity\n";
  char buf[64];
  for (const auto& e : g.edges()) {
    out << e.u << ',' << e.v << ',';
    if (g.has_capacities()) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.capacity);
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

void write_edge_csv(const GraphSample& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_csv(g, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

GraphSample read_edge_csv(std::istream& in, std::size_t n, double p, Model model, std::uint64_t seed) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("edge csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "u,v,capacity") throw std::runtime_error("edge csv: expected header 'u,v,capacity'");

  std::vector<Edge> edges;
  std::size_t lineno = 1;
  int with_cap = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw std::runtime_error("edge csv: line " + std::to_string(lineno) + ": expected 3 fields");
    }
    Edge e;
    const char* s = line.data();
    auto r1 = std::from_chars(s, s + c1, e.u);
    auto r2 = std::from_chars(s + c1 + 1, s + c2, e.v);
    if (r1.ec != std::errc() || r1.ptr != s + c1 || r2.ec != std::errc() || r2.ptr != s + c2) {
      throw std::runtime_error("edge csv: line " + std::to_string(lineno) + ": bad vertex id");
    }
    const bool has = c2 + 1 < line.size();
    if (with_cap == -1) with_cap = has ? 1 : 0;
    if (has != (with_cap == 1)) {
      throw std::runtime_error("edge csv: line " + std::to_string(lineno) +
                               ": capacities must be given for all edges or none");
    }
    if (has) {
      auto r3 = std::from_chars(s + c2 + 1, s + line.size(), e.capacity);
      if (r3.ec != std::errc() || r3.ptr != s + line.size() || !(e.capacity > 0.0)) {
        throw std::runtime_error("edge csv: line " + std::to_string(lineno) + ": bad capacity");
      }
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    edges.push_back(e);
  }
  if (with_cap != 1) {
    // Ordering keys only; seeded per edge so the result does not depend on file order.
    for (auto& e : edges) {
      Stream rng(derive_seed(seed, {kTagCsvKeys, e.u, e.v}));
      e.capacity = std::isfinite(p) && p > 0.0 ? rng.uniform_open() * p : rng.uniform_open();
    }
  }
  return GraphSample::from_edges(n, p, model, std::move(edges), with_cap == 1);
}

GraphSample read_edge_csv(const std::filesystem::path& path, std::size_t n, double p, Model model,
                          std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_edge_csv(in, n, p, model, seed);
}

}  // namespace irg
