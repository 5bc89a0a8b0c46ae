#include "irg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace irg::stats {

MeanSe mean_se(std::span<const double> x) {
  MeanSe r;
  if (x.empty()) return r;
  for (double v : x) r.mean += v;
  r.mean /= static_cast<double>(x.size());
  if (x.size() < 2) return r;
  double ss = 0.0;
  for (double v : x) ss += (v - r.mean) * (v - r.mean);
  r.sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
  r.se = r.sd / std::sqrt(static_cast<double>(x.size()));
  return r;
}

double median(std::vector<double> x) {
  if (x.empty()) throw std::invalid_argument("median of empty sample");
  const auto mid = x.size() / 2;
  std::nth_element(x.begin(), x.begin() + mid, x.end());
  const double hi = x[mid];
  if (x.size() % 2 == 1) return hi;
  const double lo = *std::max_element(x.begin(), x.begin() + mid);
  return 0.5 * (lo + hi);
}

Wilson wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {phat, std::max(0.0, std::min(phat, center - half)), std::min(1.0, std::max(phat, center + half))};
}

double chi_square_sf(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

namespace {

/// Greedy left-to-right pooling of adjacent cells until each pooled cell reaches min_count.
std::vector<std::pair<double, double>> pool_cells(const std::vector<std::pair<double, double>>& cells,
                                                  double min_a, double min_b) {
  std::vector<std::pair<double, double>> out;
  std::pair<double, double> acc{0.0, 0.0};
  for (const auto& c : cells) {
    acc.first += c.first;
    acc.second += c.second;
    if (acc.first >= min_a && acc.second >= min_b) {
      out.push_back(acc);
      acc = {0.0, 0.0};
    }
  }
  if (acc.first > 0.0 || acc.second > 0.0) {
    if (out.empty()) {
      out.push_back(acc);
    } else {
      out.back().first += acc.first;
      out.back().second += acc.second;
    }
  }
  return out;
}

}  // namespace

ChiSquare chi_square_two_sample(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("chi-square: empty sample");
  std::map<std::int64_t, std::pair<double, double>> counts;
  for (auto v : a) counts[v].first += 1.0;
  for (auto v : b) counts[v].second += 1.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double total = na + nb;

  // Pool so that the expected count of each sample in a cell is >= 5.
  std::vector<std::pair<double, double>> raw;
  for (const auto& [v, c] : counts) raw.push_back(c);
  std::vector<std::pair<double, double>> pooled;
  {
    std::pair<double, double> acc{0.0, 0.0};
    for (const auto& c : raw) {
      acc.first += c.first;
      acc.second += c.second;
      const double cell = acc.first + acc.second;
      if (cell * std::min(na, nb) / total >= 5.0) {
        pooled.push_back(acc);
        acc = {0.0, 0.0};
      }
    }
    if (acc.first + acc.second > 0.0) {
      if (pooled.empty()) {
        pooled.push_back(acc);
      } else {
        pooled.back().first += acc.first;
        pooled.back().second += acc.second;
      }
    }
  }
  ChiSquare r;
  for (const auto& [ca, cb] : pooled) {
    const double cell = ca + cb;
    const double ea = cell * na / total, eb = cell * nb / total;
    r.statistic += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
  }
  r.dof = static_cast<double>(pooled.size()) - 1.0;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

ChiSquare chi_square_gof(std::span<const std::size_t> observed, std::span<const double> probs) {
  if (observed.size() != probs.size()) throw std::invalid_argument("chi-square gof: size mismatch");
  double n = 0.0;
  for (auto o : observed) n += static_cast<double>(o);
  std::vector<std::pair<double, double>> cells;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    cells.emplace_back(static_cast<double>(observed[k]), probs[k] * n);
  }
  const auto pooled = pool_cells(cells, 0.0, 5.0);
  ChiSquare r;
  for (const auto& [o, e] : pooled) {
    if (e > 0.0) r.statistic += (o - e) * (o - e) / e;
  }
  r.dof = static_cast<double>(pooled.size()) - 1.0;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: x values are all equal");
  LinearFit r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return r;
}

std::vector<double> isotonic_nonincreasing(std::span<const double> y, std::span<const double> w) {
  if (y.size() != w.size()) throw std::invalid_argument("isotonic: size mismatch");
  struct Block {
    double value, weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < y.size(); ++i) {
    blocks.push_back({y[i], w[i], 1});
    while (blocks.size() >= 2 && blocks[blocks.size() - 2].value < blocks.back().value) {
      auto b = blocks.back();
      blocks.pop_back();
      auto& a = blocks.back();
      const double tw = a.weight + b.weight;
      a.value = (a.value * a.weight + b.value * b.weight) / tw;
      a.weight = tw;
      a.count += b.count;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& b : blocks) out.insert(out.end(), b.count, b.value);
  return out;
}

}  // namespace irg::stats
