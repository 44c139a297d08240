#pragma once

#include "distill/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace distill {

/// Bad invocation (unknown experiment, invalid grid, unwritable output).
/// Messages start with a stable machine-readable token.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inclusive linear grid. count == 0 means "use the experiment default".
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  bool is_set() const { return count > 0; }
  std::vector<double> points() const;
};

struct ExperimentConfig {
  std::string experiment;
  PhysicalParams params;
  // Swept axes, all in units of π except eta_grid; each experiment
  // documents which ones it reads.
  GridSpec kappa_grid;
  GridSpec chi_grid;
  GridSpec g_grid;
  GridSpec dk_grid;
  GridSpec eta_grid;
  int cycles = -1;  // -1: experiment default
  int n_traj = 10000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  std::string variant = "ideal";
  std::string out;  // empty: "<experiment>.csv"
};

struct ExperimentSummary {
  std::string csv_path;
  long rows = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  std::vector<std::pair<std::string, bool>> checks;

  bool all_checks_passed() const {
    for (const auto& [name, ok] : checks) {
      if (!ok) return false;
    }
    return true;
  }
};

const std::vector<std::string>& experiment_ids();

/// Runs one experiment, writes CSV plus a ".meta" sidecar, prints a summary
/// to `log`, and returns the summary. Throws UsageError for bad
/// configuration and NumericalError when a solver fails.
ExperimentSummary run_experiment(const ExperimentConfig& config, std::ostream& log);

/// The `validate` experiment: executes the invariant suite, printing one
/// line per check. Returns true iff everything passed.
bool run_validation(std::ostream& log);

/// Locale-independent formatting with 15 significant digits.
std::string format_value(double v);

}  // namespace distill
