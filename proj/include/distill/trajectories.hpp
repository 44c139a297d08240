#pragma once

#include "distill/channels.hpp"
#include "distill/spin_algebra.hpp"
#include "distill/types.hpp"

#include <cstdint>
#include <vector>

namespace distill {

enum class ProtocolVariant { Ideal, DetectorI, DetectorII };

/// What happened in one protocol cycle.
enum class CycleOutcome : std::uint8_t {
  Transmitted,      // resonant ancilla seen on the right
  ReflectedShaken,  // seen on the left, off-resonant shake applied
  MissedResent,     // detector miss, variant I: next resonant ancilla sent
  MissedShaken,     // detector miss, variant II: shake applied anyway
};

struct TrajectoryConfig {
  PhysicalParams params;
  int cycles = 30;
  ProtocolVariant variant = ProtocolVariant::Ideal;
  std::uint64_t seed = 0;
  AbState rho0 = AbState::Identity() / 4.0;
  // Ancilla spin states; the protocol's default is unpolarized for both
  // legs. Polarizing both in the same direction breaks convergence.
  XSpinState resonant_spin = unpolarized_spin();
  XSpinState shake_spin = unpolarized_spin();
};

struct TrajectoryRecord {
  std::vector<CycleOutcome> outcomes;  // length cycles
  std::vector<double> fidelities;      // length cycles + 1, incl. initial
  AbState final_state;
};

/// One stochastic run of the feedback protocol. Fully determined by
/// (config.seed, stream_index); states are renormalized each cycle and a
/// branch with probability below 1e-14 is never drawn.
TrajectoryRecord run_trajectory(const TrajectoryConfig& config,
                                std::uint64_t stream_index = 0);

struct EnsembleResult {
  std::vector<double> mean_fidelity;    // per cycle, length cycles + 1
  std::vector<double> stderr_fidelity;  // standard error of the mean
  AbState mean_final_state;
  /// Frobenius-aggregated standard error of mean_final_state:
  /// sqrt(Σ_ij Var(ρ_ij) / n_traj).
  double final_state_stderr;
  /// Per cycle, fraction of trajectories with fidelity < 0.9.
  std::vector<double> fraction_below_090;
};

/// Averages n_traj independent trajectories (substreams of config.seed).
/// The reduction order is fixed, so the result does not depend on threads.
EnsembleResult ensemble_average(const TrajectoryConfig& config, int n_traj,
                                int threads = 1);

}  // namespace distill
