#include "irg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "irg/explorer.hpp"
#include "irg/io.hpp"
#include "irg/rng.hpp"

namespace irg {

namespace {

constexpr std::uint64_t kWeightsTag = 0x77656967687473ULL;  // "weights"
constexpr std::uint64_t kRegimeTag = 0x726567696d65ULL;     // "regime"
constexpr std::uint64_t kDriftTag = 0x6472696674ULL;        // "drift"

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers. The first
/// exception is rethrown after all workers stop; `describe(i)` names the task.
template <class Body, class Describe>
void parallel_for(std::size_t count, unsigned threads, Body body, Describe describe) {
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr error;
  std::string where;
  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) {
          error = std::current_exception();
          where = describe(i);
        }
        stop = true;
      }
    }
  };
  const unsigned k = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (k == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned t = 0; t < k; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
  }
}

double implied_f(double p, double ell) { return p * std::pow(ell, 4.0 / 3.0) - std::cbrt(ell); }

}  // namespace

// ---- weight specs -----------------------------------------------------------

double parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw std::invalid_argument("expected a number, got an empty string");
  const auto slash = s.find('/');
  auto one = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse number '" + raw + "'");
    }
    if (used != t.size()) throw std::invalid_argument("cannot parse number '" + raw + "'");
    return v;
  };
  if (slash == std::string::npos) return one(s);
  const double den = one(trim(s.substr(slash + 1)));
  if (den == 0.0) throw std::invalid_argument("zero denominator in '" + raw + "'");
  return one(trim(s.substr(0, slash))) / den;
}

WeightSpec WeightSpec::parse(const std::string& text) {
  WeightSpec spec;
  spec.text = text;
  const auto colon = text.find(':');
  const std::string head = colon == std::string::npos ? "" : text.substr(0, colon);
  const std::string body = colon == std::string::npos ? text : text.substr(colon + 1);
  if (head == "pareto") {
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw std::invalid_argument("weights: expected pareto:SCALE,SHAPE");
    spec.kind = Kind::Pareto;
    spec.scale = parse_number(parts[0]);
    spec.shape = parse_number(parts[1]);
    if (!(spec.scale > 0.0)) throw std::invalid_argument("weights: Pareto scale must be positive");
  } else if (head == "const") {
    spec.kind = Kind::Constant;
    spec.value = parse_number(body);
    if (!(spec.value > 0.0)) throw std::invalid_argument("weights: constant must be positive");
  } else if (head == "file") {
    if (body.empty()) throw std::invalid_argument("weights: expected file:PATH");
    spec.kind = Kind::File;
    spec.path = body;
  } else if (head.empty()) {
    spec.kind = Kind::List;
    for (const auto& p : split(body, ',')) spec.list.push_back(parse_number(p));
    if (spec.list.empty()) throw std::invalid_argument("weights: empty list");
  } else {
    throw std::invalid_argument("weights: unknown kind '" + head + "' (pareto|const|file|list)");
  }
  return spec;
}

WeightVector WeightSpec::realize(std::size_t n, std::uint64_t seed) const {
  switch (kind) {
    case Kind::Pareto:
      return generate_pareto_iid(n, scale, shape, seed);
    case Kind::Constant:
      return generate_constant(n, value);
    case Kind::File: {
      auto wv = load_weights(path);
      if (n != 0 && wv.size() != n) {
        throw std::invalid_argument("weights file " + path.string() + " has " + std::to_string(wv.size()) +
                                    " entries, expected " + std::to_string(n));
      }
      return wv;
    }
    case Kind::List: {
      if (n != 0 && list.size() != n) {
        throw std::invalid_argument("weight list has " + std::to_string(list.size()) + " entries, expected " +
                                    std::to_string(n));
      }
      return WeightVector::from_values(list);
    }
  }
  throw std::logic_error("unreachable");
}

// ---- config -------------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (f_values.empty() && p_values.empty()) throw std::invalid_argument("no f (or p) values given");
  for (double f : f_values) {
    if (!std::isfinite(f) || !(f > 0.0)) throw std::invalid_argument("f values must be finite and positive");
  }
  for (double p : p_values) {
    if (!std::isfinite(p) || !(p > 0.0)) throw std::invalid_argument("p values must be finite and positive");
  }
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (!(eps_prime > 0.0 && eps_prime <= 1.0)) throw std::invalid_argument("eps_prime must lie in (0, 1]");
  WeightSpec::parse(weights);
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  return {
      {"n", cfg.n},
      {"weights", cfg.weights},
      {"model", std::string(to_string(cfg.model))},
      {"f_values", cfg.f_values},
      {"p_values", cfg.p_values},
      {"reps", cfg.reps},
      {"eps", cfg.eps},
      {"eps_prime", cfg.eps_prime},
      {"seed", cfg.seed},
      {"threads", cfg.threads},
      {"surplus_constant", cfg.surplus_constant},
      {"small_factor", cfg.small_factor},
      {"excess_constant", cfg.excess_constant},
      {"timing", cfg.timing},
  };
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig c) {
  if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
  if (j.contains("weights")) c.weights = j.at("weights").get<std::string>();
  if (j.contains("model")) c.model = parse_model(j.at("model").get<std::string>());
  if (j.contains("f_values")) c.f_values = j.at("f_values").get<std::vector<double>>();
  if (j.contains("p_values")) c.p_values = j.at("p_values").get<std::vector<double>>();
  if (j.contains("reps")) c.reps = j.at("reps").get<std::size_t>();
  if (j.contains("eps")) c.eps = j.at("eps").get<double>();
  if (j.contains("eps_prime")) c.eps_prime = j.at("eps_prime").get<double>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  if (j.contains("surplus_constant")) c.surplus_constant = j.at("surplus_constant").get<double>();
  if (j.contains("small_factor")) c.small_factor = j.at("small_factor").get<double>();
  if (j.contains("excess_constant")) c.excess_constant = j.at("excess_constant").get<double>();
  if (j.contains("timing")) c.timing = j.at("timing").get<bool>();
  return c;
}

// ---- events -----------------------------------------------------------------

const std::vector<std::string>& event_ids() {
  static const std::vector<std::string> ids = {
      event::kGiantSize,    event::kGiantWeight,  event::kGiantWindow, event::kSurplus,
      event::kSmallBefore,  event::kSmallAfter,   event::kSmallBoth,   event::kExcessBefore,
      event::kExcessAfter,  event::kGlobalL,
  };
  return ids;
}

double event_threshold(const std::string& id, const Prediction& pred, const ExperimentConfig& cfg, double ell,
                       double c_hat) {
  const double l23 = std::cbrt(ell * ell);
  const double f = pred.f;
  if (id == event::kGiantSize || id == event::kGiantWindow) return pred.giant_size.hi;
  if (id == event::kGiantWeight) return pred.giant_weight.hi;
  if (id == event::kSurplus) return cfg.surplus_constant * f * f * f / c_hat;
  if (id == event::kSmallBefore) return cfg.small_factor * l23 / std::pow(f, 1.0 - cfg.eps);
  if (id == event::kSmallAfter || id == event::kSmallBoth) return cfg.small_factor * l23 / f;
  if (id == event::kExcessBefore || id == event::kExcessAfter) return cfg.excess_constant * std::pow(f, cfg.eps);
  if (id == event::kGlobalL) return std::cbrt(ell);
  throw std::invalid_argument("unknown event '" + id + "'");
}

bool event_failed(const std::string& id, const ReplicationRow& r, const Prediction& pred,
                  const ExperimentConfig& cfg, double ell, double c_hat) {
  const auto size = static_cast<double>(r.c1_size);
  if (id == event::kGiantSize) return !pred.giant_size.contains(size);
  if (id == event::kGiantWeight) return !pred.giant_weight.contains(r.c1_weight);
  if (id == event::kGiantWindow) {
    return !pred.giant_size.contains(size) || !pred.giant_weight.contains(r.c1_weight);
  }
  if (id == event::kSmallBoth) {
    return event_failed(event::kSmallBefore, r, pred, cfg, ell, c_hat) ||
           event_failed(event::kSmallAfter, r, pred, cfg, ell, c_hat);
  }
  const double t = event_threshold(id, pred, cfg, ell, c_hat);
  if (id == event::kSurplus) return static_cast<double>(r.c1_surplus) > t;
  if (id == event::kSmallBefore) return static_cast<double>(r.pre_max_size) > t;
  if (id == event::kSmallAfter) return static_cast<double>(r.post_max_size) > t;
  if (id == event::kExcessBefore) return static_cast<double>(r.pre_excess_total) >= t;
  if (id == event::kExcessAfter) return static_cast<double>(r.post_excess_max) >= t;
  if (id == event::kGlobalL) return static_cast<double>(r.max_l) >= t;
  throw std::invalid_argument("unknown event '" + id + "'");
}

const EventFrequency& FAggregate::event(const std::string& id) const {
  for (const auto& e : events) {
    if (e.id == id) return e;
  }
  throw std::out_of_range("no event '" + id + "' in aggregate");
}

// ---- run ----------------------------------------------------------------------

std::uint64_t weights_seed(std::uint64_t master) { return derive_seed(master, {kWeightsTag}); }

std::uint64_t replication_seed(std::uint64_t master, std::size_t f_index, std::size_t rep) {
  return derive_seed(master, {f_index, rep});
}

namespace {

/// Independent recount of internal edges per component from the adjacency lists.
void spot_check_surplus(const GraphSample& g, const ExplorationTrace& trace,
                        std::span<const ComponentStats> comps, std::uint64_t seed) {
  std::vector<std::size_t> comp_of(g.n());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t i = comps[c].start_index; i <= comps[c].end_index; ++i) comp_of[trace.order[i - 1]] = c;
  }
  std::vector<std::size_t> edges(comps.size(), 0);
  for (std::size_t u = 0; u < g.n(); ++u) {
    for (auto v : g.neighbours(u)) {
      if (u < v) {
        if (comp_of[u] != comp_of[v]) {
          throw std::logic_error("edge joins two components (seed " + std::to_string(seed) + ")");
        }
        ++edges[comp_of[u]];
      }
    }
  }
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (edges[c] + 1 != comps[c].size + comps[c].surplus) {
      throw std::logic_error("surplus recount mismatch in component " + std::to_string(c) + " (seed " +
                             std::to_string(seed) + ")");
    }
  }
}

ReplicationRow replicate(const WeightVector& wv, const ExperimentConfig& cfg, std::size_t f_index, double f,
                         double p, std::size_t rep) {
  const auto t0 = std::chrono::steady_clock::now();
  ReplicationRow row;
  row.f_index = f_index;
  row.f = f;
  row.p = p;
  row.rep = rep;
  row.seed = replication_seed(cfg.seed, f_index, rep);

  SamplerOptions opt;
  opt.strict_chung_lu = false;
  const GraphSample g = sample_fast(wv, p, cfg.model, derive_seed(row.seed, {1}), opt);
  const ExplorationTrace trace = explore(g, wv, derive_seed(row.seed, {2}));
  const auto comps = component_stats(trace, g, wv);

  std::size_t total = 0;
  double weight = 0.0;
  for (const auto& c : comps) {
    total += c.size;
    weight += c.weight;
  }
  if (total != wv.size() || std::abs(weight - wv.ell()) > 1e-9 * wv.ell()) {
    throw std::logic_error("component sizes or weights do not sum to the totals");
  }
  if (derive_seed(row.seed, {3}) % 100 == 0) spot_check_surplus(g, trace, comps, row.seed);

  const auto [c1_idx, c1] = largest_component(comps);
  row.c1_size = c1.size;
  row.c1_weight = c1.weight;
  row.c1_surplus = c1.surplus;
  row.n_components = comps.size();
  for (std::size_t k = 0; k < comps.size(); ++k) {
    if (k == c1_idx) continue;
    const auto& c = comps[k];
    row.c2_size = std::max(row.c2_size, c.size);
    if (c.end_index < c1.start_index) {
      row.pre_max_size = std::max(row.pre_max_size, c.size);
      row.pre_excess_total += c.surplus;
    } else if (c.start_index > c1.end_index) {
      row.post_max_size = std::max(row.post_max_size, c.size);
      row.post_excess_max = std::max(row.post_excess_max, c.surplus);
    }
  }
  for (std::size_t i = c1.end_index + 1; i < trace.l.size(); ++i) row.max_l = std::max(row.max_l, trace.l[i]);
  if (cfg.timing) {
    row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  return row;
}

FAggregate aggregate(std::span<const ReplicationRow> rows, const ExperimentConfig& cfg, double f, double p,
                     double ell, double c_hat) {
  FAggregate a;
  a.f = f;
  a.p = p;
  const bool predictable = f > 0.0;
  if (predictable) a.prediction = predict(MomentSummary{ell, c_hat}, f, cfg.eps, cfg.eps_prime);

  std::vector<double> sizes, surpluses;
  double weight_sum = 0.0, comp_sum = 0.0;
  for (const auto& r : rows) {
    sizes.push_back(static_cast<double>(r.c1_size));
    surpluses.push_back(static_cast<double>(r.c1_surplus));
    weight_sum += r.c1_weight;
    comp_sum += static_cast<double>(r.n_components);
  }
  const auto ms = stats::mean_se(sizes);
  a.mean_c1_size = ms.mean;
  a.sd_c1_size = ms.sd;
  a.mean_c1_weight = weight_sum / static_cast<double>(rows.size());
  a.mean_n_components = comp_sum / static_cast<double>(rows.size());
  a.median_surplus = stats::median(surpluses);
  if (predictable) a.median_surplus_over_f3 = a.median_surplus / (f * f * f);

  if (predictable) {
    for (const auto& id : event_ids()) {
      EventFrequency e;
      e.id = id;
      e.threshold = event_threshold(id, a.prediction, cfg, ell, c_hat);
      e.trials = rows.size();
      for (const auto& r : rows) e.failures += event_failed(id, r, a.prediction, cfg, ell, c_hat) ? 1 : 0;
      e.failure_rate = stats::wilson_interval(e.failures, e.trials);
      a.events.push_back(e);
    }
  }
  return a;
}

}  // namespace

ExperimentReport run(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto spec = WeightSpec::parse(cfg.weights);
  return run(cfg, spec.realize(cfg.n, weights_seed(cfg.seed)));
}

ExperimentReport run(const ExperimentConfig& cfg, const WeightVector& wv) {
  cfg.validate();
  ExperimentReport report;
  report.config = cfg;
  report.n = wv.size();
  report.config.n = wv.size();
  report.ell = wv.ell();
  report.c_hat = wv.c_hat();

  std::vector<double> fs, ps;
  if (!cfg.p_values.empty()) {
    for (double p : cfg.p_values) {
      ps.push_back(p);
      fs.push_back(implied_f(p, wv.ell()));
    }
  } else {
    for (double f : cfg.f_values) {
      fs.push_back(f);
      ps.push_back(critical_p(wv, f));
    }
  }

  const std::size_t tasks = fs.size() * cfg.reps;
  report.rows.resize(tasks);
  parallel_for(
      tasks, cfg.threads,
      [&](std::size_t t) {
        const std::size_t k = t / cfg.reps, r = t % cfg.reps;
        report.rows[t] = replicate(wv, cfg, k, fs[k], ps[k], r);
      },
      [&](std::size_t t) {
        const std::size_t k = t / cfg.reps, r = t % cfg.reps;
        return "replication f=" + io::format_double(fs[k]) + " rep=" + std::to_string(r) +
               " seed=" + std::to_string(replication_seed(cfg.seed, k, r)) + " failed";
      });

  std::sort(report.rows.begin(), report.rows.end(), [](const ReplicationRow& a, const ReplicationRow& b) {
    return a.f_index != b.f_index ? a.f_index < b.f_index : a.rep < b.rep;
  });
  for (std::size_t k = 0; k < fs.size(); ++k) {
    std::span<const ReplicationRow> rows(report.rows.data() + k * cfg.reps, cfg.reps);
    report.aggregates.push_back(aggregate(rows, cfg, fs[k], ps[k], wv.ell(), wv.c_hat()));
  }
  return report;
}

// ---- output ---------------------------------------------------------------------

void write_rows_csv(const ExperimentReport& report, std::ostream& out) {
  out << "f,seed,rep,c1_size,c1_weight,c1_surplus,c2_size,pre_max_size,post_max_size,"
         "pre_excess_total,post_excess_max,n_components,max_l,ms\n";
  for (const auto& r : report.rows) {
    out << io::format_double(r.f) << ',' << r.seed << ',' << r.rep << ',' << r.c1_size << ','
        << io::format_double(r.c1_weight) << ',' << r.c1_surplus << ',' << r.c2_size << ',' << r.pre_max_size
        << ',' << r.post_max_size << ',' << r.pre_excess_total << ',' << r.post_excess_max << ','
        << r.n_components << ',' << r.max_l << ',';
    if (report.config.timing) out << io::format_double(r.ms);
    out << '\n';
  }
}

void write_rows_csv(const ExperimentReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_rows_csv(report, out);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

nlohmann::json to_json(const DecayFit& fit) {
  return {{"event", fit.event},         {"exponent", fit.exponent}, {"slope", fit.slope},
          {"intercept", fit.intercept}, {"r2", fit.r2},             {"status", fit.status}};
}

nlohmann::json to_json(const ExperimentReport& report) {
  nlohmann::json aggs = nlohmann::json::array();
  for (const auto& a : report.aggregates) {
    nlohmann::json events = nlohmann::json::object();
    for (const auto& e : a.events) {
      events[e.id] = {{"threshold", e.threshold},
                      {"failures", e.failures},
                      {"trials", e.trials},
                      {"failure_frequency", e.failure_rate.estimate},
                      {"success_frequency", 1.0 - e.failure_rate.estimate},
                      {"failure_ci95", {e.failure_rate.lo, e.failure_rate.hi}}};
    }
    nlohmann::json j = {{"f", a.f},
                        {"p", a.p},
                        {"events", events},
                        {"mean_c1_size", a.mean_c1_size},
                        {"sd_c1_size", a.sd_c1_size},
                        {"mean_c1_weight", a.mean_c1_weight},
                        {"median_surplus", a.median_surplus},
                        {"median_surplus_over_f3", a.median_surplus_over_f3},
                        {"mean_n_components", a.mean_n_components}};
    if (a.f > 0.0) j["prediction"] = to_json(a.prediction);
    aggs.push_back(std::move(j));
  }
  nlohmann::json fits = nlohmann::json::array();
  std::size_t usable = 0;
  for (const auto& a : report.aggregates) usable += a.f > 0.0 ? 1 : 0;
  if (usable >= 2) {
    for (const auto& id : event_ids()) fits.push_back(to_json(decay_fit(report, id)));
  }
  return {{"config", to_json(report.config)},
          {"weights", {{"n", report.n}, {"ell", report.ell}, {"c_hat", report.c_hat}}},
          {"surplus_constant", report.config.surplus_constant},
          {"aggregates", aggs},
          {"decay_fits", fits}};
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  io::ensure_directory(dir);
  write_rows_csv(report, dir / "rows.csv");
  io::write_json_file(to_json(report), dir / "report.json");
}

// ---- decay fits -------------------------------------------------------------------

double decay_exponent(const std::string& id, double eps) {
  if (id == event::kGiantSize || id == event::kGiantWeight || id == event::kGiantWindow) return 1.0;
  if (id == event::kSurplus) return 1.0;
  if (id == event::kSmallBefore || id == event::kSmallAfter || id == event::kSmallBoth) return std::min(eps, 0.5);
  if (id == event::kExcessBefore) return eps / 2.0;
  if (id == event::kExcessAfter || id == event::kGlobalL) return 0.5;
  throw std::invalid_argument("unknown event '" + id + "'");
}

DecayFit decay_fit(std::span<const double> f, std::span<const std::size_t> failures,
                   std::span<const std::size_t> trials, double exponent, const std::string& event) {
  if (f.size() != failures.size() || f.size() != trials.size()) {
    throw std::invalid_argument("decay_fit: size mismatch");
  }
  if (f.size() < 2) throw std::invalid_argument("decay_fit: need at least two f values");
  DecayFit fit;
  fit.event = event;
  fit.exponent = exponent;
  std::vector<double> x, y;
  bool any = false;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (trials[k] == 0) throw std::invalid_argument("decay_fit: zero trials");
    const double r = static_cast<double>(trials[k]);
    x.push_back(std::pow(f[k], exponent));
    y.push_back(std::log(static_cast<double>(failures[k]) / r + 1.0 / (2.0 * r)));
    any = any || failures[k] > 0;
  }
  if (!any) {
    fit.status = "decay consistent, unresolvable";
    return fit;
  }
  const auto lf = stats::linear_fit(x, y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r2 = lf.r2;
  fit.status = lf.slope < 0.0 ? "decaying" : "not decaying";
  return fit;
}

DecayFit decay_fit(const ExperimentReport& report, const std::string& id) {
  std::vector<double> f;
  std::vector<std::size_t> fail, trials;
  for (const auto& a : report.aggregates) {
    if (a.events.empty()) continue;
    const auto& e = a.event(id);
    f.push_back(a.f);
    fail.push_back(e.failures);
    trials.push_back(e.trials);
  }
  return decay_fit(f, fail, trials, decay_exponent(id, report.config.eps), id);
}

// ---- regime sweep ------------------------------------------------------------------

RegimeReport regime_sweep(const RegimeConfig& cfg) {
  if (cfg.c_values.empty()) throw std::invalid_argument("regime: no c values");
  for (double c : cfg.c_values) {
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("regime: c values must be positive");
  }
  if (cfg.reps < 1) throw std::invalid_argument("regime: reps must be >= 1");
  const auto wv = WeightSpec::parse(cfg.weights).realize(cfg.n, weights_seed(cfg.seed));

  RegimeReport report;
  report.config = cfg;
  report.config.n = wv.size();
  report.ell = wv.ell();
  const double n = static_cast<double>(wv.size());
  const double n23 = std::cbrt(n * n);

  const std::size_t tasks = cfg.c_values.size() * cfg.reps;
  std::vector<std::size_t> sizes(tasks);
  auto seed_of = [&](std::size_t t) { return derive_seed(cfg.seed, {kRegimeTag, t / cfg.reps, t % cfg.reps}); };
  parallel_for(
      tasks, cfg.threads,
      [&](std::size_t t) {
        const double p = cfg.c_values[t / cfg.reps] / wv.ell();
        SamplerOptions opt;
        opt.strict_chung_lu = false;
        const auto s = seed_of(t);
        const auto g = sample_fast(wv, p, cfg.model, derive_seed(s, {1}), opt);
        const auto trace = explore(g, wv, derive_seed(s, {2}));
        std::size_t best = 0;
        for (const auto& [a, b] : trace.component_bounds) best = std::max(best, b - a + 1);
        sizes[t] = best;
      },
      [&](std::size_t t) {
        return "regime c=" + io::format_double(cfg.c_values[t / cfg.reps]) + " rep=" + std::to_string(t % cfg.reps) +
               " seed=" + std::to_string(seed_of(t)) + " failed";
      });

  for (std::size_t k = 0; k < cfg.c_values.size(); ++k) {
    RegimePoint pt;
    pt.c = cfg.c_values[k];
    pt.p = pt.c / wv.ell();
    pt.c1_sizes.assign(sizes.begin() + static_cast<std::ptrdiff_t>(k * cfg.reps),
                       sizes.begin() + static_cast<std::ptrdiff_t>((k + 1) * cfg.reps));
    std::vector<double> scaled;
    double sum = 0.0;
    for (auto s : pt.c1_sizes) {
      sum += static_cast<double>(s);
      scaled.push_back(static_cast<double>(s) / n23);
    }
    pt.mean_c1 = sum / static_cast<double>(cfg.reps);
    pt.mean_c1_over_n = pt.mean_c1 / n;
    const auto ms = stats::mean_se(scaled);
    pt.mean_c1_over_n23 = ms.mean;
    pt.sd_c1_over_n23 = ms.sd;
    report.points.push_back(std::move(pt));
  }

  std::vector<std::size_t> idx(report.points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return report.points[a].c < report.points[b].c; });
  report.strictly_increasing = true;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    const auto& lo = report.points[idx[i - 1]];
    const auto& hi = report.points[idx[i]];
    if (!(lo.c < hi.c && lo.mean_c1 < hi.mean_c1)) report.strictly_increasing = false;
  }
  return report;
}

nlohmann::json to_json(const RegimeReport& report) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : report.points) {
    pts.push_back({{"c", p.c},
                   {"p", p.p},
                   {"mean_c1", p.mean_c1},
                   {"mean_c1_over_n", p.mean_c1_over_n},
                   {"mean_c1_over_n23", p.mean_c1_over_n23},
                   {"sd_c1_over_n23", p.sd_c1_over_n23},
                   {"c1_sizes", p.c1_sizes}});
  }
  return {{"config",
           {{"n", report.config.n},
            {"weights", report.config.weights},
            {"model", std::string(to_string(report.config.model))},
            {"c_values", report.config.c_values},
            {"reps", report.config.reps},
            {"seed", report.config.seed},
            {"threads", report.config.threads}}},
          {"ell", report.ell},
          {"points", pts},
          {"strictly_increasing", report.strictly_increasing}};
}

// ---- drift -------------------------------------------------------------------------

DriftCheck drift_check(const WeightVector& wv, double f, std::size_t reps, std::uint64_t seed,
                       std::span<const std::size_t> grid, unsigned threads) {
  if (reps < 2) throw std::invalid_argument("drift_check: need at least two replications");
  for (auto m : grid) {
    if (m < 1 || m > wv.size()) throw std::invalid_argument("drift_check: grid point outside 1..n");
  }
  const double p = critical_p(wv, f);
  std::vector<std::vector<double>> values(reps);
  auto seed_of = [&](std::size_t r) { return derive_seed(seed, {kDriftTag, r}); };
  parallel_for(
      reps, threads,
      [&](std::size_t r) {
        const auto s = seed_of(r);
        const auto g = sample_fast(wv, p, Model::Poisson, derive_seed(s, {1}));
        const auto trace = explore(g, wv, derive_seed(s, {2}));
        const auto l0 = l0_trace(trace, g);
        values[r].reserve(grid.size());
        for (auto m : grid) values[r].push_back(static_cast<double>(l0[m]));
      },
      [&](std::size_t r) { return "drift rep=" + std::to_string(r) + " seed=" + std::to_string(seed_of(r)) + " failed"; });

  DriftCheck out;
  out.grid.assign(grid.begin(), grid.end());
  out.reps = reps;
  const auto moments = MomentSummary::of(wv);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    std::vector<double> col(reps);
    for (std::size_t r = 0; r < reps; ++r) col[r] = values[r][k];
    const auto ms = stats::mean_se(col);
    out.mean.push_back(ms.mean);
    out.std_error.push_back(ms.se);
    out.prediction.push_back(drift_value(moments, f, 0.0, 0.0, static_cast<double>(grid[k])));
  }
  return out;
}

}  // namespace irg
