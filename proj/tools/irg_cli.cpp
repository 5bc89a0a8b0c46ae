// Command-line front end: irg <subcommand> [flags]. See README.md for examples.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irg/explorer.hpp"
#include "irg/graphgen.hpp"
#include "irg/harness.hpp"
#include "irg/io.hpp"
#include "irg/rng.hpp"
#include "irg/sbs.hpp"
#include "irg/theory.hpp"
#include "irg/weights.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(irg::parse_number(cur));
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  return out;
}

/// JSON value as CLI tokens for "--key". false booleans and nulls produce nothing.
void append_tokens(std::vector<std::string>& out, const std::string& key, const json& v) {
  std::string flag = "--" + key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  if (v.is_boolean()) {
    if (v.get<bool>()) out.push_back(flag);
    return;
  }
  if (v.is_null()) return;
  std::string value;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) value += ',';
      value += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
    }
  } else if (v.is_string()) {
    value = v.get<std::string>();
  } else {
    value = v.dump();
  }
  out.push_back(flag);
  out.push_back(value);
}

/// Splices the contents of --config FILE in front of the user's own flags, so
/// that explicit flags override the file (all options take the last value).
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;
  const json cfg = irg::io::read_json_file(path);
  if (!cfg.is_object()) throw std::runtime_error("config " + path + " must hold a JSON object");
  std::vector<std::string> injected;
  for (const auto& [k, v] : cfg.items()) append_tokens(injected, k, v);

  // Insert after the subcommand words (one for most commands, two for sbs).
  std::size_t at = args.empty() ? 0 : 1;
  if (!args.empty() && args[0] == "sbs" && args.size() > 1 && args[1].rfind("-", 0) != 0) at = 2;
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return args;
}

/// Resolved values of every named option of a subcommand.
json resolved_config(const CLI::App* app) {
  json j = json::object();
  j["command"] = app->get_parent() && app->get_parent()->get_parent()
                     ? app->get_parent()->get_name() + " " + app->get_name()
                     : app->get_name();
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name.empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      const auto res = opt->results();
      value = res.empty() ? "" : res.back();
      if (opt->get_expected_max() == 0) value = "true";
    } else {
      value = opt->get_default_str();
      if (opt->get_expected_max() == 0 && value.empty()) value = "false";
    }
    if (value == "true" || value == "false") {
      j[name] = value == "true";
      continue;
    }
    try {
      std::size_t used = 0;
      const double d = std::stod(value, &used);
      if (used == value.size()) {
        if (value.find_first_of(".eE") == std::string::npos && value.size() < 19) {
          j[name] = std::stoll(value);
        } else {
          j[name] = d;
        }
        continue;
      }
    } catch (const std::exception&) {
    }
    j[name] = value;
  }
  return j;
}

void echo_config(const CLI::App* app, const fs::path& dir) {
  irg::io::ensure_directory(dir);
  irg::io::write_json_file(resolved_config(app), dir / "config.json");
}

// ---- shared flag groups ---------------------------------------------------------

struct GraphFlags {
  std::size_t n = 0;
  std::string weights = "pareto:2/3,4";
  std::string model = "poisson";
  double f = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  CLI::Option* f_opt = nullptr;
  CLI::Option* p_opt = nullptr;
  CLI::Option* seed_opt = nullptr;

  void add(CLI::App* app, bool seed_required) {
    app->add_option("--n", n, "Number of vertices (taken from the data for file: or list weights)");
    app->add_option("--weights", weights, "pareto:SCALE,SHAPE | const:C | file:PATH | w1,w2,...")
        ->capture_default_str();
    app->add_option("--model", model, "poisson | chung-lu | bdml")->capture_default_str();
    f_opt = app->add_option("--f", f, "Critical-window parameter: p = (l^{1/3} + f) / l^{4/3}");
    p_opt = app->add_option("--p", p, "Raw edge parameter");
    f_opt->excludes(p_opt);
    seed_opt = app->add_option("--seed", seed, "Master seed");
    if (seed_required) seed_opt->required();
  }

  irg::WeightVector weight_vector() const {
    return irg::WeightSpec::parse(weights).realize(n, irg::weights_seed(seed));
  }

  double edge_parameter(const irg::WeightVector& wv) const {
    if (p_opt->count() > 0) return p;
    if (f_opt->count() > 0) return irg::critical_p(wv, f);
    throw CLI::ValidationError("--f/--p", "one of --f or --p is required");
  }
};

std::uint64_t graph_seed(std::uint64_t master) { return irg::derive_seed(master, {0x6772617068ULL}); }
std::uint64_t walk_seed(std::uint64_t master) { return irg::derive_seed(master, {0x77616c6bULL}); }

// ---- gen --------------------------------------------------------------------------

struct GenCmd {
  GraphFlags g;
  std::string out = "gen_out";
  unsigned threads = default_threads();
  bool lenient = false;
  CLI::App* app = nullptr;

  void add(CLI::App& root) {
    app = root.add_subcommand("gen", "Generate a weight vector and a graph");
    g.add(app, true);
    app->add_option("--out", out, "Output directory")->capture_default_str();
    app->add_option("--threads", threads, "Sampler threads (output does not depend on it)");
    app->add_flag("--clip", lenient, "Chung-Lu: clip probabilities at 1 instead of failing");
  }

  int run() const {
    const auto wv = g.weight_vector();
    const double p = g.edge_parameter(wv);
    irg::SamplerOptions opt;
    opt.threads = threads;
    opt.strict_chung_lu = !lenient;
    const auto graph = irg::sample_fast(wv, p, irg::parse_model(g.model), graph_seed(g.seed), opt);
    const fs::path dir(out);
    echo_config(app, dir);
    irg::save_weights(wv, dir / "weights.txt");
    irg::write_edge_csv(graph, dir / "edges.csv");
    json summary = {{"n", wv.size()},   {"ell", wv.ell()}, {"c_hat", wv.c_hat()},
                    {"p", p},           {"m", graph.edge_count()}, {"model", g.model}};
    irg::io::write_json_file(summary, dir / "summary.json");
    std::cout << summary.dump() << '\n';
    return 0;
  }
};

// ---- explore ----------------------------------------------------------------------

struct ExploreCmd {
  GraphFlags g;
  std::string graph;
  std::string out = "explore_out";
  bool rescale = false;
  unsigned threads = default_threads();
  CLI::App* app = nullptr;

  void add(CLI::App& root) {
    app = root.add_subcommand("explore", "Run the breadth-first walk on a graph");
    g.add(app, true);
    app->add_option("--graph", graph, "Edge CSV (u,v,capacity); otherwise a graph is generated");
    app->add_option("--out", out, "Output directory")->capture_default_str();
    app->add_flag("--rescale", rescale, "Also write (i/n^{2/3}, L_i/n^{1/3}) pairs");
    app->add_option("--threads", threads, "Sampler threads");
  }

  int run() const {
    const auto wv = g.weight_vector();
    irg::GraphSample gs;
    const auto model = irg::parse_model(g.model);
    if (!graph.empty()) {
      double p = 0.0;
      if (g.p_opt->count() > 0 || g.f_opt->count() > 0) p = g.edge_parameter(wv);
      gs = irg::read_edge_csv(fs::path(graph), wv.size(), p, model, graph_seed(g.seed));
    } else {
      if (g.n == 0 && irg::WeightSpec::parse(g.weights).kind == irg::WeightSpec::Kind::Pareto) {
        throw CLI::ValidationError("--n", "either --graph or generation flags (--n, --f/--p) are required");
      }
      irg::SamplerOptions opt;
      opt.threads = threads;
      gs = irg::sample_fast(wv, g.edge_parameter(wv), model, graph_seed(g.seed), opt);
    }
    const auto trace = irg::explore(gs, wv, walk_seed(g.seed));
    const auto comps = irg::component_stats(trace, gs, wv);
    const fs::path dir(out);
    echo_config(app, dir);
    irg::write_trace_jsonl(trace, dir / "trace.jsonl");
    irg::write_components_csv(comps, dir / "components.csv");
    if (rescale) irg::write_rescaled_csv(trace, dir / "rescaled.csv");
    const auto [idx, c1] = irg::largest_component(comps);
    std::cout << json{{"n", wv.size()},
                      {"edges", gs.edge_count()},
                      {"components", comps.size()},
                      {"c1_index", idx},
                      {"c1_size", c1.size},
                      {"c1_weight", c1.weight},
                      {"c1_surplus", c1.surplus}}
                     .dump()
              << '\n';
    return 0;
  }
};

// ---- verify -----------------------------------------------------------------------

struct VerifyCmd {
  std::size_t n = 0;
  std::string weights = "pareto:2/3,4";
  std::string model = "poisson";
  std::string f_list;
  std::string p_list;
  std::size_t reps = 1;
  double eps = 0.5;
  double eps_prime = 0.4;
  double surplus_constant = 20.0;
  double small_factor = 3.0;
  double excess_constant = 3.0;
  std::uint64_t seed = 0;
  std::string out_dir = "verify_out";
  unsigned threads = default_threads();
  bool timing = false;
  CLI::App* app = nullptr;

  void add(CLI::App& root) {
    app = root.add_subcommand("verify", "Replicated experiment against the theorem events");
    app->add_option("--n", n, "Number of vertices")->required();
    app->add_option("--weights", weights, "Weight spec")->capture_default_str();
    app->add_option("--model", model, "poisson | chung-lu | bdml")->capture_default_str();
    auto* fl = app->add_option("--f-list", f_list, "Comma-separated f values");
    auto* pl = app->add_option("--p-list", p_list, "Comma-separated raw p values");
    fl->excludes(pl);
    app->add_option("--reps", reps, "Replications per f")->capture_default_str();
    app->add_option("--eps", eps, "Small-component exponent")->capture_default_str();
    app->add_option("--eps-prime", eps_prime, "Giant-window tolerance")->capture_default_str();
    app->add_option("--surplus-constant", surplus_constant, "K in surplus <= K f^3 / c_hat")
        ->capture_default_str();
    app->add_option("--small-factor", small_factor, "Multiplier on small-component bounds")
        ->capture_default_str();
    app->add_option("--excess-constant", excess_constant, "A in excess >= A f^eps")->capture_default_str();
    app->add_option("--seed", seed, "Master seed")->required();
    app->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads (reports do not depend on it)");
    app->add_flag("--timing", timing, "Fill the ms column with per-replication runtimes");
  }

  int run() const {
    irg::ExperimentConfig cfg;
    cfg.n = n;
    cfg.weights = weights;
    cfg.model = irg::parse_model(model);
    cfg.f_values = parse_list(f_list);
    cfg.p_values = parse_list(p_list);
    if (cfg.f_values.empty() && cfg.p_values.empty()) {
      throw CLI::ValidationError("--f-list", "one of --f-list or --p-list is required");
    }
    cfg.reps = reps;
    cfg.eps = eps;
    cfg.eps_prime = eps_prime;
    cfg.surplus_constant = surplus_constant;
    cfg.small_factor = small_factor;
    cfg.excess_constant = excess_constant;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.timing = timing;
    const auto report = irg::run(cfg);
    echo_config(app, out_dir);
    irg::write_report(report, out_dir);
    for (const auto& a : report.aggregates) {
      json line = {{"f", a.f}, {"mean_c1_size", a.mean_c1_size}, {"median_surplus", a.median_surplus}};
      for (const auto& e : a.events) line[e.id] = e.failure_rate.estimate;
      std::cout << line.dump() << '\n';
    }
    return 0;
  }
};

// ---- sbs --------------------------------------------------------------------------

struct SbsCmd {
  CLI::App* app = nullptr;
  CLI::App* mean = nullptr;
  CLI::App* mono = nullptr;
  CLI::App* conj = nullptr;

  // mean-curve
  std::size_t n = 0;
  std::string weights = "pareto:2/3,4";
  std::size_t rounds = 1000;
  std::size_t l_max = 0;
  std::uint64_t seed = 0;
  std::string out_dir = "sbs_out";
  unsigned threads = default_threads();

  // monotone
  std::string mono_weights;
  double cap = 0.0;
  std::string mono_out;

  // conjecture
  std::size_t conj_n = 4;
  std::size_t m_max = 2;
  std::size_t count = 100;
  std::string conj_weights;
  std::uint64_t conj_seed = 0;
  bool no_concentration = false;
  std::string conj_out = "sbs_out";

  void add(CLI::App& root) {
    app = root.add_subcommand("sbs", "Size-biased sampling studies");
    app->require_subcommand(1);

    mean = app->add_subcommand("mean-curve", "Monte Carlo E[w_v(l)] against 1 + l(1 - c_hat)/ell");
    mean->add_option("--n", n, "Number of weights");
    mean->add_option("--weights", weights, "Weight spec")->capture_default_str();
    mean->add_option("--rounds", rounds, "Independent draws")->capture_default_str();
    mean->add_option("--l-max", l_max, "Last position (default n/10)");
    mean->add_option("--seed", seed, "Master seed")->required();
    mean->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    mean->add_option("--threads", threads, "Worker threads");

    mono = app->add_subcommand("monotone", "Exact check that P(min(w_v(u), cap) >= x) is non-increasing in u");
    mono->add_option("--weights", mono_weights, "Comma-separated weights (n <= 8)")->required();
    mono->add_option("--cap", cap, "Truncation level (default: every weight value and no cap)");
    mono->add_option("--out-dir", mono_out, "Optional output directory");

    conj = app->add_subcommand("conjecture", "Exact search for counterexamples to the sampling conjectures");
    conj->add_option("--n", conj_n, "Vector length (<= 6)")->capture_default_str();
    conj->add_option("--m-max", m_max, "Largest m for the ordered conjectures")->capture_default_str();
    conj->add_option("--count", count, "Random weight vectors to test")->capture_default_str();
    conj->add_option("--weights", conj_weights, "Test this vector instead of random ones");
    conj->add_option("--seed", conj_seed, "Seed for the random vectors");
    conj->add_flag("--no-concentration", no_concentration, "Skip the concentration conjecture");
    conj->add_option("--out-dir", conj_out, "Output directory")->capture_default_str();
  }

  int run() const {
    if (mean->parsed()) return run_mean();
    if (mono->parsed()) return run_monotone();
    return run_conjecture();
  }

  int run_mean() const {
    const auto wv = irg::WeightSpec::parse(weights).realize(n, irg::weights_seed(seed));
    const std::size_t lm = l_max ? l_max : std::max<std::size_t>(1, wv.size() / 10);
    if (lm > wv.size()) throw CLI::ValidationError("--l-max", "must not exceed n");
    irg::MeanCurveOptions opt;
    opt.threads = threads;
    const auto curve = irg::mean_curve(wv, lm, rounds, irg::derive_seed(seed, {0x736273ULL}), opt);
    echo_config(mean, out_dir);
    irg::write_mean_curve_csv(curve, fs::path(out_dir) / "mean_curve.csv");
    std::cout << json{{"n", wv.size()}, {"ell", wv.ell()}, {"c_hat", wv.c_hat()}, {"l_max", lm},
                      {"rounds", rounds}}
                     .dump()
              << '\n';
    return 0;
  }

  int run_monotone() const {
    const auto w = parse_list(mono_weights);
    if (w.size() > irg::kMaxEnumerationN) throw CLI::ValidationError("--weights", "exact mode needs n <= 8");
    std::vector<double> caps;
    if (mono->count("--cap") > 0) {
      caps.push_back(cap);
    } else {
      caps = w;
      std::sort(caps.begin(), caps.end());
      caps.erase(std::unique(caps.begin(), caps.end()), caps.end());
      caps.push_back(irg::kInfinity);
    }
    json out = {{"weights", w}, {"checks", json::array()}};
    bool all = true;
    for (double c : caps) {
      const auto r = irg::check_monotonicity(w, c);
      json item = irg::to_json(r);
      item["cap"] = std::isfinite(c) ? json(c) : json("inf");
      out["checks"].push_back(item);
      all = all && r.holds;
    }
    out["holds"] = all;
    if (!mono_out.empty()) {
      echo_config(mono, mono_out);
      irg::io::write_json_file(out, fs::path(mono_out) / "monotone.json");
    }
    std::cout << (all ? "pass" : "fail") << ' ' << out.dump() << '\n';
    return 0;
  }

  int run_conjecture() const {
    std::vector<std::vector<double>> vectors;
    if (!conj_weights.empty()) {
      vectors.push_back(parse_list(conj_weights));
    } else {
      if (conj->count("--seed") == 0) throw CLI::ValidationError("--seed", "random vectors need --seed");
      if (conj_n > irg::kMaxConjectureN || conj_n < 2) {
        throw CLI::ValidationError("--n", "exact mode needs 2 <= n <= 6");
      }
      for (std::size_t k = 0; k < count; ++k) {
        irg::Stream s(irg::derive_seed(conj_seed, {k}));
        std::vector<double> w(conj_n);
        for (auto& x : w) x = 0.1 + 9.9 * s.uniform();
        vectors.push_back(w);
      }
    }
    for (const auto& w : vectors) {
      if (w.size() > irg::kMaxConjectureN) throw CLI::ValidationError("--weights", "exact mode needs n <= 6");
    }
    json all = json::array();
    std::size_t ordered_fail = 0, conc_fail = 0;
    for (const auto& w : vectors) {
      const auto r = irg::check_conjectures(w, m_max, !no_concentration);
      ordered_fail += r.failures(irg::ConjectureKind::OrderedShift) +
                      r.failures(irg::ConjectureKind::OrderedReplacement);
      conc_fail += r.failures(irg::ConjectureKind::Concentration);
      for (const auto& item : irg::to_json(r)) all.push_back(item);
    }
    echo_config(conj, conj_out);
    irg::io::write_json_file(all, fs::path(conj_out) / "conjecture.json");
    std::cout << json{{"vectors", vectors.size()},
                      {"m_max", m_max},
                      {"ordered_failures", ordered_fail},
                      {"concentration_failures", conc_fail},
                      {"ordered_all_hold", ordered_fail == 0}}
                     .dump()
              << '\n';
    return 0;
  }
};

// ---- predict ----------------------------------------------------------------------

struct PredictCmd {
  std::size_t n = 0;
  std::string weights = "pareto:2/3,4";
  double f = 0.0;
  double eps = 0.5;
  double eps_prime = 0.4;
  std::uint64_t seed = 0;
  std::string out_dir;
  CLI::App* app = nullptr;

  void add(CLI::App& root) {
    app = root.add_subcommand("predict", "Leading-order predictions for a weight vector and f");
    app->add_option("--n", n, "Number of vertices");
    app->add_option("--weights", weights, "Weight spec")->capture_default_str();
    app->add_option("--f", f, "Critical-window parameter")->required();
    app->add_option("--eps", eps, "Small-component exponent")->capture_default_str();
    app->add_option("--eps-prime", eps_prime, "Giant-window tolerance")->capture_default_str();
    app->add_option("--seed", seed, "Seed (needed for random weights)");
    app->add_option("--out-dir", out_dir, "Optional output directory");
  }

  int run() const {
    const auto spec = irg::WeightSpec::parse(weights);
    if (spec.kind == irg::WeightSpec::Kind::Pareto && app->count("--seed") == 0) {
      throw CLI::ValidationError("--seed", "random weights need --seed");
    }
    const auto wv = spec.realize(n, irg::weights_seed(seed));
    json j = irg::to_json(irg::predict(wv, f, eps, eps_prime));
    j["n"] = wv.size();
    if (!out_dir.empty()) {
      echo_config(app, out_dir);
      irg::io::write_json_file(j, fs::path(out_dir) / "prediction.json");
    }
    std::cout << j.dump(2) << '\n';
    return 0;
  }
};

// ---- regime -----------------------------------------------------------------------

struct RegimeCmd {
  std::size_t n = 0;
  std::string weights = "pareto:2/3,4";
  std::string model = "poisson";
  std::string c_list = "0.8,1.0,1.2";
  std::size_t reps = 10;
  std::uint64_t seed = 0;
  std::string out_dir = "regime_out";
  unsigned threads = default_threads();
  CLI::App* app = nullptr;

  void add(CLI::App& root) {
    app = root.add_subcommand("regime", "Largest component across p = c / ell");
    app->add_option("--n", n, "Number of vertices")->required();
    app->add_option("--weights", weights, "Weight spec")->capture_default_str();
    app->add_option("--model", model, "poisson | chung-lu | bdml")->capture_default_str();
    app->add_option("--c-list", c_list, "Comma-separated c values")->capture_default_str();
    app->add_option("--reps", reps, "Replications per c")->capture_default_str();
    app->add_option("--seed", seed, "Master seed")->required();
    app->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads");
  }

  int run() const {
    irg::RegimeConfig cfg;
    cfg.n = n;
    cfg.weights = weights;
    cfg.model = irg::parse_model(model);
    cfg.c_values = parse_list(c_list);
    cfg.reps = reps;
    cfg.seed = seed;
    cfg.threads = threads;
    const auto report = irg::regime_sweep(cfg);
    echo_config(app, out_dir);
    const json j = irg::to_json(report);
    irg::io::write_json_file(j, fs::path(out_dir) / "regime.json");
    for (const auto& p : report.points) {
      std::cout << json{{"c", p.c}, {"mean_c1_over_n", p.mean_c1_over_n}, {"mean_c1_over_n23", p.mean_c1_over_n23}}
                       .dump()
                << '\n';
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App root{"Rank-1 inhomogeneous random graphs: sampling, exploration and verification", "irg"};
  root.require_subcommand(1);
  root.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  std::string config_path;
  root.add_option("--config", config_path, "JSON file whose keys are flag names; explicit flags win")
      ->configurable(false);

  GenCmd gen;
  ExploreCmd exp;
  VerifyCmd ver;
  SbsCmd sbs;
  PredictCmd pred;
  RegimeCmd reg;
  gen.add(root);
  exp.add(root);
  ver.add(root);
  sbs.add(root);
  pred.add(root);
  reg.add(root);
  for (CLI::App* sub : root.get_subcommands({})) {
    sub->fallthrough();
    for (CLI::App* inner : sub->get_subcommands({})) inner->fallthrough();
  }

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    root.parse(args);
  } catch (const CLI::ParseError& e) {
    return root.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (gen.app->parsed()) return gen.run();
    if (exp.app->parsed()) return exp.run();
    if (ver.app->parsed()) return ver.run();
    if (sbs.app->parsed()) return sbs.run();
    if (pred.app->parsed()) return pred.run();
    if (reg.app->parsed()) return reg.run();
  } catch (const CLI::ParseError& e) {
    return root.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
