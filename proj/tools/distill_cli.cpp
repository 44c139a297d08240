// distill: reproduces the scattering-protocol results as CSV files.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numerical
// failure.

#include "distill/experiments.hpp"
#include "distill/types.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

struct GridOption {
  std::string text;

  distill::GridSpec parse() const {
    if (text.empty()) return {};
    distill::GridSpec g;
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    try {
      if (first == std::string::npos || second == std::string::npos) {
        throw std::invalid_argument("bad format");
      }
      g.start = std::stod(text.substr(0, first));
      g.stop = std::stod(text.substr(first + 1, second - first - 1));
      g.count = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
      throw distill::UsageError("invalid-grid: expected start:stop:count, got '" +
                                text + "'");
    }
    if (g.count < 1) throw distill::UsageError("invalid-grid: count must be >= 1");
    return g;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Drives two fixed qubits into the singlet state by repeated on- and "
      "off-resonant scattering of flying ancilla qubits, and exports the "
      "simulation results (channel spectra, fixed points, convergence "
      "curves, Monte Carlo trajectories) as CSV."};
  app.name("distill");
  app.require_subcommand(1);
  app.set_config("--config")
      ->description("key = value file; command-line flags take precedence");

  distill::ExperimentConfig config;
  double kappa_pi = 1.0, chi_pi = 2.5, g_pi = 1.0, dk_pi = 0.0;
  GridOption kappa_grid, chi_grid, g_grid, dk_grid, eta_grid;
  bool kappa_given = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--kappa-pi", kappa_pi, "resonant-leg momentum kd/π")
        ->each([&](const std::string&) { kappa_given = true; });
    cmd->add_option("--chi-pi", chi_pi, "shake momentum qd/π");
    cmd->add_option("--g-pi", g_pi, "coupling (mgd/ħ²)/π");
    cmd->add_option("--n", config.params.n, "resonance index, κ_n = nπ");
    cmd->add_option("--dk-pi", dk_pi, "momentum spread (Δk)d/π");
    cmd->add_option("--eta", config.params.eta, "detector efficiency in [0, 1]");
    cmd->add_option("--cycles", config.cycles, "number of protocol cycles");
    cmd->add_option("--out", config.out, "output CSV path (default <experiment>.csv)");
    cmd->add_option("--threads", config.threads, "worker threads (0 = auto)");
    cmd->add_option("--kappa-grid", kappa_grid.text, "κ/π grid start:stop:count");
    cmd->add_option("--chi-grid", chi_grid.text, "χ/π grid start:stop:count");
    cmd->add_option("--g-grid", g_grid.text, "G/π grid start:stop:count");
    cmd->add_option("--dk-grid", dk_grid.text, "Δκ/π grid start:stop:count");
    cmd->add_option("--eta-grid", eta_grid.text, "η grid start:stop:count");
  };

  for (const std::string& id : distill::experiment_ids()) {
    CLI::App* cmd = app.add_subcommand(id, "write " + id + " data as CSV");
    add_common(cmd);
    if (id == "trajectories") {
      cmd->add_option("--ntraj", config.n_traj, "number of trajectories");
      cmd->add_option("--seed", config.seed, "ensemble seed");
      cmd->add_option("--variant", config.variant,
                      "ideal, detector1 or detector2");
    }
  }
  app.add_subcommand("validate", "run the invariant suite and exit 0 iff it passes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    if (cmd->get_name() == "validate") {
      return distill::run_validation(std::cout) ? 0 : 1;
    }

    config.experiment = cmd->get_name();
    config.params.kappa = kappa_pi * distill::pi;
    config.params.chi = chi_pi * distill::pi;
    config.params.coupling = g_pi * distill::pi;
    config.params.delta_kappa = dk_pi * distill::pi;
    if (!kappa_given) config.params.kappa = config.params.resonant_kappa();
    config.kappa_grid = kappa_grid.parse();
    config.chi_grid = chi_grid.parse();
    config.g_grid = g_grid.parse();
    config.dk_grid = dk_grid.parse();
    config.eta_grid = eta_grid.parse();

    const distill::ExperimentSummary summary =
        distill::run_experiment(config, std::cout);
    if (!summary.all_checks_passed()) {
      std::cerr << "error: validation: sanity checks failed for "
                << config.experiment << '\n';
      return 1;
    }
    return 0;
  } catch (const distill::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const distill::NumericalError& e) {
    std::cerr << "error: numerical: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: numerical: " << e.what() << '\n';
    return 3;
  }
}
