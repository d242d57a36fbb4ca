#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kfactor/constructions.hpp"
#include "kfactor/factor.hpp"

namespace kfactor {

// Runs fn(0..count-1) on up to `workers` threads; results must be written
// by index so the outcome does not depend on scheduling.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

enum class Outcome { kSuccess, kFailure, kUndecided };
const char* outcome_name(Outcome o);

struct TrialResult {
  Outcome outcome = Outcome::kUndecided;
  std::string reason;
  long long nodes = 0;
};

// Host seed is derive_seed(seed, 1); perturbation seed is derive_seed(seed, 2).
std::uint64_t host_seed(std::uint64_t trial_seed);
std::uint64_t perturbation_seed(std::uint64_t trial_seed);

// spec.n and spec.r must be set; spec.seed is ignored.
TrialResult trial(const HostSpec& spec, double p, std::uint64_t seed, long long budget);

struct SeedCrossing {
  std::uint64_t seed = 0;
  bool decided = false;
  double p_star = 0.0;  // upper end of the final bracket
  double lo = 0.0, hi = 0.0;
  int solves = 0;
  std::string reason;   // why a seed was discarded
};

struct CrossingEstimate {
  int n = 0;
  std::vector<SeedCrossing> seeds;
  int decided = 0;
  double median = 0.0, q1 = 0.0, q3 = 0.0;
};

// Exact per-seed bisection over the sorted perturbation uniforms of the
// host's non-edges.
SeedCrossing seed_crossing(const HostSpec& spec, std::uint64_t seed, double tol, long long budget);

// Seeds are derive_seed(master, i) for i < seeds.
CrossingEstimate crossing(const HostSpec& spec, int seeds, double tol, long long budget,
                          std::uint64_t master = 1, int workers = 1);

// Type-7 quantile of unsorted values.
double quantile(std::vector<double> v, double q);

struct ExponentFit {
  double slope = 0.0, intercept = 0.0, stderr_slope = 0.0;
  int points = 0;
};
ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points);

struct SweepFamily {
  std::string label;  // CSV family column; defaults to the family name
  HostSpec spec;      // n and seed ignored
};

struct SweepConfig {
  std::vector<SweepFamily> families;
  std::vector<int> n;
  std::vector<double> p;
  int trials = 1;
  std::uint64_t seed = 1;
  long long budget = kDefaultBudget;
  int workers = 1;
  std::string output;
};

// Reads the JSON schema documented in the README.
SweepConfig parse_sweep_config(const std::string& json_text);
SweepConfig read_sweep_config(const std::string& path);

struct SweepRecord {
  std::string family;
  int n = 0;
  double p = 0.0;
  int trials = 0, successes = 0, budget_exhausted = 0;
  double phat = 0.0, wilson_lo = 0.0, wilson_hi = 0.0;
  bool usable() const { return budget_exhausted * 5 <= trials; }
};

inline constexpr const char* kSweepHeader =
    "family,n,p,trials,successes,budget_exhausted,phat,wilson_lo,wilson_hi";

std::string format_p(double p);
std::string sweep_csv(const std::vector<SweepRecord>& rows);
std::vector<SweepRecord> parse_sweep_csv(const std::string& text);

struct SweepReport {
  std::vector<SweepRecord> rows;
  int computed = 0, skipped = 0;
};

// Writes cfg.output after every completed n; cells already present there are
// kept and skipped.
SweepReport sweep(const SweepConfig& cfg);

std::pair<double, double> wilson_interval(int successes, int trials, double z = 1.959963984540054);

// Per-n p where phat of one family crosses 1/2, interpolated in log p.
std::vector<std::pair<double, double>> half_points(const std::vector<SweepRecord>& rows,
                                                  const std::string& family);

}  // namespace kfactor
