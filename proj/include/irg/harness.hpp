#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "irg/graphgen.hpp"
#include "irg/stats.hpp"
#include "irg/theory.hpp"
#include "irg/weights.hpp"

namespace irg {

/// Parsed form of a weight specification string:
///   pareto:SCALE,SHAPE   i.i.d. Pareto draws (numbers may be written as a/b)
///   const:C              n copies of C
///   file:PATH            one weight per line
///   w1,w2,...            explicit list
struct WeightSpec {
  enum class Kind { Pareto, Constant, File, List };
  Kind kind = Kind::Constant;
  double scale = 1.0;
  double shape = 4.0;
  double value = 1.0;
  std::filesystem::path path;
  std::vector<double> list;
  std::string text;

  static WeightSpec parse(const std::string& text);

  /// Builds the weight vector. n is ignored for File and List specs, where the
  /// length comes from the data (n == 0 means "whatever the data says"; any
  /// other mismatch is an error).
  WeightVector realize(std::size_t n, std::uint64_t seed) const;
};

/// Parses a decimal or a fraction "a/b".
double parse_number(const std::string& s);

struct ExperimentConfig {
  std::size_t n = 0;
  std::string weights = "pareto:2/3,4";
  Model model = Model::Poisson;
  /// Either f_values or p_values is used; p_values wins when non-empty.
  std::vector<double> f_values;
  std::vector<double> p_values;
  std::size_t reps = 1;
  double eps = 0.5;
  double eps_prime = 0.4;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// surplus(C1) <= surplus_constant * f^3 / c_hat counts as a success.
  double surplus_constant = 20.0;
  /// Multiplier on the small-component bounds.
  double small_factor = 3.0;
  /// Multiplier A in the excess events Exc >= A f^eps.
  double excess_constant = 3.0;
  /// Fill the ms column. Off by default so that row files are byte-reproducible.
  bool timing = false;

  void validate() const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Reads the fields present in j on top of `base`.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

struct ReplicationRow {
  std::size_t f_index = 0;
  double f = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::size_t rep = 0;
  std::size_t c1_size = 0;
  double c1_weight = 0.0;
  std::size_t c1_surplus = 0;
  std::size_t c2_size = 0;
  std::size_t pre_max_size = 0;
  std::size_t post_max_size = 0;
  std::size_t pre_excess_total = 0;
  std::size_t post_excess_max = 0;
  std::size_t n_components = 0;
  std::int64_t max_l = 0;
  double ms = 0.0;
};

/// Event identifiers. A "failure" is a replication where the stated property does not hold.
namespace event {
inline constexpr const char* kGiantSize = "giant_size";       ///< |C1| in the size interval
inline constexpr const char* kGiantWeight = "giant_weight";   ///< weight(C1) in the weight interval
inline constexpr const char* kGiantWindow = "giant_window";   ///< both of the above
inline constexpr const char* kSurplus = "surplus";            ///< surplus(C1) <= K f^3 / c_hat
inline constexpr const char* kSmallBefore = "small_before";   ///< components before C1 <= a l^{2/3} / f^{1-eps}
inline constexpr const char* kSmallAfter = "small_after";     ///< components after C1 <= a l^{2/3} / f
inline constexpr const char* kSmallBoth = "small_both";       ///< both small-component bounds
inline constexpr const char* kExcessBefore = "excess_before"; ///< total excess before C1 < A f^eps
inline constexpr const char* kExcessAfter = "excess_after";   ///< max excess after C1 < A f^eps
inline constexpr const char* kGlobalL = "global_l";           ///< max L after C1 < l^{1/3}
}  // namespace event

/// All event ids, in report order.
const std::vector<std::string>& event_ids();

struct EventFrequency {
  std::string id;
  double threshold = 0.0;  ///< numeric bound used (interval events report the upper end)
  std::size_t failures = 0;
  std::size_t trials = 0;
  stats::Wilson failure_rate;
};

struct FAggregate {
  double f = 0.0;
  double p = 0.0;
  Prediction prediction;
  std::vector<EventFrequency> events;
  double mean_c1_size = 0.0;
  double sd_c1_size = 0.0;
  double mean_c1_weight = 0.0;
  double median_surplus = 0.0;
  double median_surplus_over_f3 = 0.0;
  double mean_n_components = 0.0;

  const EventFrequency& event(const std::string& id) const;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t n = 0;
  double ell = 0.0;
  double c_hat = 0.0;
  std::vector<ReplicationRow> rows;  ///< sorted by (f index, rep)
  std::vector<FAggregate> aggregates;
};

/// Pure failure predicate for one row, given the per-f prediction.
bool event_failed(const std::string& id, const ReplicationRow& row, const Prediction& pred,
                  const ExperimentConfig& cfg, double ell, double c_hat);
double event_threshold(const std::string& id, const Prediction& pred, const ExperimentConfig& cfg,
                       double ell, double c_hat);

/// Replication r at f index k uses derive_seed(master, {k, r}); its graph and
/// walk use further substreams {1} and {2} of that seed. The weight vector is
/// drawn once per run from derive_seed(master, {"weights"}).
ExperimentReport run(const ExperimentConfig& cfg);
ExperimentReport run(const ExperimentConfig& cfg, const WeightVector& wv);

std::uint64_t weights_seed(std::uint64_t master);
std::uint64_t replication_seed(std::uint64_t master, std::size_t f_index, std::size_t rep);

/// Header: f,seed,rep,c1_size,c1_weight,c1_surplus,c2_size,pre_max_size,post_max_size,
/// pre_excess_total,post_excess_max,n_components,max_l,ms
void write_rows_csv(const ExperimentReport& report, std::ostream& out);
void write_rows_csv(const ExperimentReport& report, const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentReport& report);
/// rows.csv and report.json under dir.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

struct DecayFit {
  std::string event;
  double exponent = 1.0;  ///< abscissa is f^exponent
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  /// "decaying", "not decaying" or "decay consistent, unresolvable".
  std::string status;
};

/// Fits log(failures/trials + 1/(2 trials)) against f^exponent.
DecayFit decay_fit(std::span<const double> f, std::span<const std::size_t> failures,
                   std::span<const std::size_t> trials, double exponent, const std::string& event = "");
/// Uses the exponent matching the tail bound of the given event.
DecayFit decay_fit(const ExperimentReport& report, const std::string& event);
double decay_exponent(const std::string& event, double eps);

nlohmann::json to_json(const DecayFit& fit);

struct RegimeConfig {
  std::size_t n = 0;
  std::string weights = "pareto:2/3,4";
  Model model = Model::Poisson;
  std::vector<double> c_values;
  std::size_t reps = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct RegimePoint {
  double c = 0.0;
  double p = 0.0;
  std::vector<std::size_t> c1_sizes;  ///< one per replication
  double mean_c1 = 0.0;
  double mean_c1_over_n = 0.0;
  double mean_c1_over_n23 = 0.0;
  double sd_c1_over_n23 = 0.0;
};

struct RegimeReport {
  RegimeConfig config;
  double ell = 0.0;
  std::vector<RegimePoint> points;  ///< in the order of c_values
  /// mean |C1| strictly increasing along increasing c.
  bool strictly_increasing = false;
};

/// p = c / ell for each c.
RegimeReport regime_sweep(const RegimeConfig& cfg);
nlohmann::json to_json(const RegimeReport& report);

/// Monte Carlo mean of L0_m on a grid of m, compared with drift_value(f, h=0, l=0).
struct DriftCheck {
  std::vector<std::size_t> grid;
  std::vector<double> mean;
  std::vector<double> std_error;
  std::vector<double> prediction;
  std::size_t reps = 0;
};

DriftCheck drift_check(const WeightVector& wv, double f, std::size_t reps, std::uint64_t seed,
                       std::span<const std::size_t> grid, unsigned threads = 1);

}  // namespace irg
