#include "irg/sbs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "irg/rng.hpp"
#include "irg/sum_tree.hpp"

namespace irg {

namespace {

constexpr std::uint64_t kTagSequential = 0x73657175ULL;
constexpr std::uint64_t kTagClock = 0x636c6f63ULL;
constexpr std::uint64_t kTagCurve = 0x63757276ULL;

void check_small(std::span<const double> weights, std::size_t max_n) {
  if (weights.empty()) throw std::invalid_argument("enumeration needs at least one weight");
  if (weights.size() > max_n) {
    throw std::invalid_argument("exact enumeration supports n <= " + std::to_string(max_n) + ", got " +
                                std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be positive");
  }
}

void enumerate_rec(std::span<const double> w, std::vector<std::size_t>& prefix, std::vector<bool>& used,
                   double remaining, double prob,
                   const std::function<void(std::span<const std::size_t>, double)>& visit) {
  if (prefix.size() == w.size()) {
    visit(prefix, prob);
    return;
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    prefix.push_back(k);
    enumerate_rec(w, prefix, used, remaining - w[k], prob * (w[k] / remaining), visit);
    prefix.pop_back();
    used[k] = false;
  }
}

struct Outcome {
  double value;
  double prob;
};

/// Sorts and merges outcomes whose values agree within tol.
std::vector<Outcome> merge_outcomes(std::vector<Outcome> v, double tol) {
  std::sort(v.begin(), v.end(), [](const Outcome& a, const Outcome& b) { return a.value < b.value; });
  std::vector<Outcome> out;
  for (const auto& o : v) {
    if (!out.empty() && o.value - out.back().value <= tol) {
      out.back().prob += o.prob;
    } else {
      out.push_back(o);
    }
  }
  return out;
}

/// P(|S - E S| >= x - tol) for a law given as merged outcomes.
double deviation_tail(const std::vector<Outcome>& law, double mean, double x, double tol) {
  double p = 0.0;
  for (const auto& o : law) {
    if (std::abs(o.value - mean) >= x - tol) p += o.prob;
  }
  return p;
}

}  // namespace

// ---- samplers ---------------------------------------------------------------

SbsDraw draw_sequential(std::span<const double> weights, std::size_t m, std::uint64_t seed) {
  if (m == 0 || m > weights.size()) {
    throw std::invalid_argument("draw_sequential: need 1 <= m <= n (m = " + std::to_string(m) +
                                ", n = " + std::to_string(weights.size()) + ")");
  }
  SumTree tree(weights);
  Stream rng(derive_seed(seed, {kTagSequential}));
  SbsDraw d;
  d.method = DrawMethod::Sequential;
  d.order.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto k = tree.find(rng.uniform());
    d.order.push_back(static_cast<std::uint32_t>(k));
    tree.set(k, 0.0);
  }
  return d;
}

SbsDraw draw_sequential(const WeightVector& wv, std::size_t m, std::uint64_t seed) {
  return draw_sequential(wv.values(), m, seed);
}

std::pair<SbsDraw, ClockTrace> draw_clock(std::span<const double> weights, std::uint64_t seed,
                                          std::span<const double> grid) {
  const std::size_t n = weights.size();
  if (n == 0) throw std::invalid_argument("draw_clock: no weights");
  const double ell = std::accumulate(weights.begin(), weights.end(), 0.0);
  ClockTrace ct;
  ct.times.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(weights[k] > 0.0)) throw std::invalid_argument("draw_clock: weights must be positive");
    Stream rng(derive_seed(seed, {kTagClock, k}));
    ct.times[k] = rng.exponential(weights[k] / ell);
  }
  SbsDraw d;
  d.method = DrawMethod::Clock;
  d.order.resize(n);
  std::iota(d.order.begin(), d.order.end(), 0u);
  std::sort(d.order.begin(), d.order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return ct.times[a] < ct.times[b] || (ct.times[a] == ct.times[b] && a < b);
  });

  ct.grid.assign(grid.begin(), grid.end());
  ct.count.reserve(grid.size());
  ct.weighted.reserve(grid.size());
  for (double x : grid) {
    std::size_t c = 0;
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (ct.times[k] <= x) {
        ++c;
        s += weights[k];
      }
    }
    ct.count.push_back(c);
    ct.weighted.push_back(s);
  }
  return {std::move(d), std::move(ct)};
}

std::pair<SbsDraw, ClockTrace> draw_clock(const WeightVector& wv, std::uint64_t seed,
                                          std::span<const double> grid) {
  return draw_clock(wv.values(), seed, grid);
}

double clock_prefix_weight(std::span<const double> weights, const SbsDraw& draw, std::size_t upto) {
  double s = 0.0;
  for (std::size_t k = 0; k < upto; ++k) s += weights[draw.order[k]];
  return s;
}

// ---- mean curve ---------------------------------------------------------------

namespace {

struct CurveChunk {
  std::vector<double> sum, sumsq;
  std::vector<double> block_sum, block_sumsq;
};

}  // namespace

MeanCurve mean_curve(const WeightVector& wv, std::size_t l_max, std::size_t rounds, std::uint64_t seed,
                     const MeanCurveOptions& opt, BlockMeans* blocks) {
  if (l_max == 0 || l_max > wv.size()) throw std::invalid_argument("mean_curve: need 1 <= l_max <= n");
  if (rounds < 2) throw std::invalid_argument("mean_curve: need at least 2 rounds");

  const std::size_t block = opt.block;
  const std::size_t n_blocks = block > 0 ? (l_max + block - 1) / block : 0;
  // Fixed chunking of rounds so the floating-point reduction order never depends on threads.
  const std::size_t n_chunks = std::min<std::size_t>(64, rounds);
  std::vector<CurveChunk> chunks(n_chunks);
  const SumTree base(wv.values());

  auto run_chunk = [&](std::size_t c) {
    auto& ch = chunks[c];
    ch.sum.assign(l_max, 0.0);
    ch.sumsq.assign(l_max, 0.0);
    ch.block_sum.assign(n_blocks, 0.0);
    ch.block_sumsq.assign(n_blocks, 0.0);
    SumTree tree = base;
    std::vector<std::uint32_t> drawn(l_max);
    const std::size_t r0 = rounds * c / n_chunks, r1 = rounds * (c + 1) / n_chunks;
    for (std::size_t r = r0; r < r1; ++r) {
      Stream rng(derive_seed(seed, {kTagCurve, r}));
      double acc = 0.0;
      for (std::size_t l = 0; l < l_max; ++l) {
        const auto k = tree.find(rng.uniform());
        drawn[l] = static_cast<std::uint32_t>(k);
        tree.set(k, 0.0);
        const double x = wv[k];
        ch.sum[l] += x;
        ch.sumsq[l] += x * x;
        if (block > 0) {
          acc += x;
          if ((l + 1) % block == 0 || l + 1 == l_max) {
            const auto b = l / block;
            const auto width = l + 1 - b * block;
            const double avg = acc / static_cast<double>(width);
            ch.block_sum[b] += avg;
            ch.block_sumsq[b] += avg * avg;
            acc = 0.0;
          }
        }
      }
      for (auto k : drawn) tree.set(k, wv[k]);
    }
  };

  const unsigned threads = std::max(1u, opt.threads);
  if (threads == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t c = t; c < n_chunks; c += threads) run_chunk(c);
      });
    }
  }

  const auto R = static_cast<double>(rounds);
  auto finish = [R](double s, double ss, double& mean, double& se) {
    mean = s / R;
    const double var = std::max(0.0, (ss - s * s / R) / (R - 1.0));
    se = std::sqrt(var / R);
  };

  MeanCurve out;
  out.rounds = rounds;
  out.mean.resize(l_max);
  out.std_error.resize(l_max);
  out.prediction.resize(l_max);
  const double slope = (1.0 - wv.c_hat()) / wv.ell();
  for (std::size_t l = 0; l < l_max; ++l) {
    double s = 0.0, ss = 0.0;
    for (const auto& ch : chunks) {
      s += ch.sum[l];
      ss += ch.sumsq[l];
    }
    finish(s, ss, out.mean[l], out.std_error[l]);
    out.prediction[l] = 1.0 + static_cast<double>(l + 1) * slope;
  }
  if (blocks != nullptr && block > 0) {
    *blocks = BlockMeans{};
    for (std::size_t b = 0; b < n_blocks; ++b) {
      double s = 0.0, ss = 0.0;
      for (const auto& ch : chunks) {
        s += ch.block_sum[b];
        ss += ch.block_sumsq[b];
      }
      double mean = 0.0, se = 0.0;
      finish(s, ss, mean, se);
      const std::size_t first = b * block + 1, last = std::min(l_max, (b + 1) * block);
      double pred = 0.0;
      for (std::size_t l = first; l <= last; ++l) pred += out.prediction[l - 1];
      blocks->first.push_back(first);
      blocks->last.push_back(last);
      blocks->mean.push_back(mean);
      blocks->std_error.push_back(se);
      blocks->prediction.push_back(pred / static_cast<double>(last - first + 1));
    }
  }
  return out;
}

void write_mean_curve_csv(const MeanCurve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "l,empirical_mean,stderr,prediction\n";
  char a[64], b[64], c[64];
  for (std::size_t l = 0; l < curve.mean.size(); ++l) {
    auto ra = std::to_chars(a, a + sizeof a, curve.mean[l]);
    auto rb = std::to_chars(b, b + sizeof b, curve.std_error[l]);
    auto rc = std::to_chars(c, c + sizeof c, curve.prediction[l]);
    out << l + 1 << ',' << std::string_view(a, ra.ptr - a) << ',' << std::string_view(b, rb.ptr - b) << ','
        << std::string_view(c, rc.ptr - c) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// ---- enumeration --------------------------------------------------------------

void for_each_order(std::span<const double> weights,
                    const std::function<void(std::span<const std::size_t>, double)>& visit) {
  check_small(weights, kMaxEnumerationN);
  std::vector<std::size_t> prefix;
  prefix.reserve(weights.size());
  std::vector<bool> used(weights.size(), false);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  enumerate_rec(weights, prefix, used, total, 1.0, visit);
}

double enumerate_exact(std::span<const double> weights,
                       const std::function<double(std::span<const std::size_t>)>& statistic) {
  double acc = 0.0;
  for_each_order(weights, [&](std::span<const std::size_t> order, double p) { acc += p * statistic(order); });
  return acc;
}

std::vector<std::vector<double>> position_marginals(std::span<const double> weights) {
  const std::size_t n = weights.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for_each_order(weights, [&](std::span<const std::size_t> order, double p) {
    for (std::size_t u = 0; u < n; ++u) m[u][order[u]] += p;
  });
  return m;
}

double order_probability(std::span<const double> weights, std::span<const std::size_t> order) {
  double remaining = std::accumulate(weights.begin(), weights.end(), 0.0);
  double p = 1.0;
  for (auto k : order) {
    p *= weights[k] / remaining;
    remaining -= weights[k];
  }
  return p;
}

double clock_order_probability(std::span<const double> weights, std::span<const std::size_t> order) {
  // Memorylessness: the next clock to ring among those left is k with probability rate_k / sum of rates.
  const std::size_t n = order.size();
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + weights[order[i]];
  double p = 1.0;
  for (std::size_t i = 0; i < n; ++i) p *= weights[order[i]] / suffix[i];
  return p;
}

MonotonicityReport check_monotonicity(std::span<const double> weights, double cap) {
  check_small(weights, kMaxEnumerationN);
  if (!(cap > 0.0)) throw std::invalid_argument("check_monotonicity: cap must be positive");
  const TruncatedWeightView view{cap};
  const std::size_t n = weights.size();
  const auto marg = position_marginals(weights);

  MonotonicityReport r;
  for (double w : weights) r.thresholds.push_back(view(w));
  std::sort(r.thresholds.begin(), r.thresholds.end());
  r.thresholds.erase(std::unique(r.thresholds.begin(), r.thresholds.end()), r.thresholds.end());

  r.survival.assign(n, std::vector<double>(r.thresholds.size(), 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t t = 0; t < r.thresholds.size(); ++t) {
      double p = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (view(weights[k]) >= r.thresholds[t]) p += marg[u][k];
      }
      r.survival[u][t] = p;
    }
  }
  for (std::size_t u = 0; u + 1 < n; ++u) {
    for (std::size_t t = 0; t < r.thresholds.size(); ++t) {
      r.max_violation = std::max(r.max_violation, r.survival[u + 1][t] - r.survival[u][t]);
    }
  }
  r.holds = r.max_violation <= 1e-12;
  return r;
}

// ---- conjectures ----------------------------------------------------------------

std::string_view to_string(ConjectureKind k) {
  switch (k) {
    case ConjectureKind::Concentration: return "concentration";
    case ConjectureKind::OrderedShift: return "ordered_shift";
    case ConjectureKind::OrderedReplacement: return "ordered_replacement";
  }
  return "?";
}

bool ConjectureReport::ordered_holds_up_to(std::size_t m) const {
  return std::all_of(instances.begin(), instances.end(), [m](const ConjectureInstance& c) {
    return c.kind == ConjectureKind::Concentration || c.m > m || c.holds;
  });
}

std::size_t ConjectureReport::failures(ConjectureKind kind) const {
  return static_cast<std::size_t>(std::count_if(instances.begin(), instances.end(), [kind](const auto& c) {
    return c.kind == kind && !c.holds;
  }));
}

ConjectureReport check_conjectures(std::span<const double> weights, std::size_t m_max,
                                   bool include_concentration) {
  check_small(weights, kMaxConjectureN);
  const std::size_t n = weights.size();
  ConjectureReport rep;
  rep.weights.assign(weights.begin(), weights.end());

  std::vector<std::vector<std::size_t>> orders;
  std::vector<double> probs;
  for_each_order(weights, [&](std::span<const std::size_t> o, double p) {
    orders.emplace_back(o.begin(), o.end());
    probs.push_back(p);
  });
  const auto marg = position_marginals(weights);
  const double scale = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double tol = 1e-9 * std::max(1.0, scale);
  constexpr double kProbSlack = 1e-12;

  if (include_concentration) {
    for (std::size_t l = 1; l <= n; ++l) {
      for (std::size_t m = l; m <= n; ++m) {
        const std::size_t len = m - l + 1;
        std::vector<Outcome> without;
        without.reserve(orders.size());
        for (std::size_t k = 0; k < orders.size(); ++k) {
          double s = 0.0;
          for (std::size_t i = l - 1; i < m; ++i) s += weights[orders[k][i]];
          without.push_back({s, probs[k]});
        }
        // i.i.d. comparator: len draws from the marginal of v(l).
        const auto& q = marg[l - 1];
        std::vector<Outcome> with;
        std::vector<std::size_t> idx(len, 0);
        while (true) {
          double s = 0.0, p = 1.0;
          for (auto k : idx) {
            s += weights[k];
            p *= q[k];
          }
          with.push_back({s, p});
          std::size_t pos = 0;
          while (pos < len && ++idx[pos] == n) idx[pos++] = 0;
          if (pos == len) break;
        }
        without = merge_outcomes(std::move(without), tol);
        with = merge_outcomes(std::move(with), tol);
        double mean_v = 0.0, mean_j = 0.0;
        for (const auto& o : without) mean_v += o.value * o.prob;
        for (const auto& o : with) mean_j += o.value * o.prob;

        std::vector<Outcome> devs;
        for (const auto& o : without) devs.push_back({std::abs(o.value - mean_v), 0.0});
        for (const auto& o : with) devs.push_back({std::abs(o.value - mean_j), 0.0});
        devs = merge_outcomes(std::move(devs), tol);
        for (const auto& d : devs) {
          ConjectureInstance c;
          c.kind = ConjectureKind::Concentration;
          c.l = l;
          c.m = m;
          c.x = {d.value};
          c.lhs = deviation_tail(without, mean_v, d.value, tol);
          c.rhs = deviation_tail(with, mean_j, d.value, tol);
          c.holds = c.lhs <= c.rhs + kProbSlack;
          rep.instances.push_back(std::move(c));
        }
      }
    }
  }

  std::vector<double> levels(weights.begin(), weights.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const std::size_t top = std::min(m_max, n - 1);
  for (std::size_t m = 1; m <= top; ++m) {
    std::vector<std::size_t> idx(m, 0);
    std::vector<double> x(m);
    while (true) {
      for (std::size_t k = 0; k < m; ++k) x[k] = levels[idx[k]];
      double first = 0.0, shifted = 0.0;
      for (std::size_t o = 0; o < orders.size(); ++o) {
        bool a = true, b = true;
        for (std::size_t k = 0; k < m; ++k) {
          a = a && weights[orders[o][k]] >= x[k];
          b = b && weights[orders[o][k + 1]] >= x[k];
        }
        if (a) first += probs[o];
        if (b) shifted += probs[o];
      }
      double iid = 1.0;
      for (std::size_t k = 0; k < m; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (weights[j] >= x[k]) s += marg[0][j];
        }
        iid *= s;
      }
      rep.instances.push_back({ConjectureKind::OrderedShift, m, 1, x, first, shifted,
                               first >= shifted - kProbSlack});
      rep.instances.push_back({ConjectureKind::OrderedReplacement, m, 1, x, iid, first,
                               iid >= first - kProbSlack});

      std::size_t pos = 0;
      while (pos < m && ++idx[pos] == levels.size()) idx[pos++] = 0;
      if (pos == m) break;
    }
  }
  return rep;
}

nlohmann::json to_json(const ConjectureReport& report) {
  auto out = nlohmann::json::array();
  for (const auto& c : report.instances) {
    nlohmann::json j{
        {"n", report.weights.size()},
        {"weights", report.weights},
        {"kind", to_string(c.kind)},
        {"m", c.m},
        {"l", c.l},
        {"lhs", c.lhs},
        {"rhs", c.rhs},
        {"holds", c.holds},
    };
    if (c.kind == ConjectureKind::Concentration) {
      j["x"] = c.x.front();
    } else {
      j["x"] = c.x;
    }
    out.push_back(std::move(j));
  }
  return out;
}

nlohmann::json to_json(const MonotonicityReport& report) {
  return {{"holds", report.holds},
          {"max_violation", report.max_violation},
          {"thresholds", report.thresholds},
          {"survival", report.survival}};
}

}  // namespace irg
