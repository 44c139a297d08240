#include "distill/trajectories.hpp"

#include "distill/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace distill {

namespace {

constexpr double kBranchFloor = 1e-14;

/// The conditional maps of one cycle, built once and shared by all
/// trajectories of an ensemble.
struct CycleMaps {
  Superoperator transmit;      // 𝒯 at the resonant leg
  Superoperator reflect_shake; // 𝒮_q ∘ 𝓡
  Superoperator miss;          // variant-dependent action after a miss
  double eta = 1.0;
  bool with_misses = false;
};

CycleMaps build_cycle_maps(const TrajectoryConfig& config) {
  const PhysicalParams& p = config.params;
  p.validate();

  CycleMaps maps;
  maps.transmit = channel_T_at(p.kappa, p, config.resonant_spin);
  maps.reflect_shake = channel_S_at(p.chi, p, config.shake_spin) *
                       channel_R_at(p.kappa, p, config.resonant_spin);
  maps.eta = p.eta;
  maps.with_misses =
      config.variant != ProtocolVariant::Ideal && p.eta < 1.0;
  if (config.variant == ProtocolVariant::DetectorI) {
    maps.miss = channel_S_at(p.kappa, p, config.resonant_spin);
  } else if (config.variant == ProtocolVariant::DetectorII) {
    maps.miss = channel_S_at(p.chi, p, config.shake_spin) *
                channel_S_at(p.kappa, p, config.resonant_spin);
  }
  return maps;
}

TrajectoryRecord run_with_maps(const CycleMaps& maps,
                               const TrajectoryConfig& config,
                               std::uint64_t stream_index) {
  SplitMix64 rng = SplitMix64::substream(config.seed, stream_index);

  TrajectoryRecord record;
  record.outcomes.reserve(config.cycles);
  record.fidelities.reserve(config.cycles + 1);

  AbState rho = config.rho0;
  record.fidelities.push_back(singlet_fidelity(rho));

  for (int cycle = 0; cycle < config.cycles; ++cycle) {
    if (maps.with_misses && rng.uniform() >= maps.eta) {
      rho = maps.miss.apply(rho);  // trace preserving, no renormalization
      record.outcomes.push_back(config.variant == ProtocolVariant::DetectorI
                                    ? CycleOutcome::MissedResent
                                    : CycleOutcome::MissedShaken);
    } else {
      AbState transmitted = maps.transmit.apply(rho);
      const double p_t = std::clamp(transmitted.trace().real(), 0.0, 1.0);
      bool transmit;
      if (p_t >= 1.0 - kBranchFloor) {
        transmit = true;  // reflection branch never drawn
      } else if (p_t <= kBranchFloor) {
        transmit = false;  // transmission branch never drawn
      } else {
        transmit = rng.uniform() < p_t;
      }
      if (transmit) {
        rho = transmitted / p_t;
        record.outcomes.push_back(CycleOutcome::Transmitted);
      } else {
        rho = maps.reflect_shake.apply(rho) / (1.0 - p_t);
        record.outcomes.push_back(CycleOutcome::ReflectedShaken);
      }
    }
    rho /= rho.trace().real();  // keep unit trace against numerical drift
    record.fidelities.push_back(singlet_fidelity(rho));
  }
  record.final_state = rho;
  return record;
}

}  // namespace

TrajectoryRecord run_trajectory(const TrajectoryConfig& config,
                                std::uint64_t stream_index) {
  if (config.cycles < 0) {
    throw std::invalid_argument("run_trajectory: cycles must be >= 0");
  }
  require_density_matrix(config.rho0, 1e-9, "rho0");
  return run_with_maps(build_cycle_maps(config), config, stream_index);
}

EnsembleResult ensemble_average(const TrajectoryConfig& config, int n_traj,
                                int threads) {
  if (n_traj < 1) {
    throw std::invalid_argument("ensemble_average: n_traj must be >= 1");
  }
  if (config.cycles < 0) {
    throw std::invalid_argument("ensemble_average: cycles must be >= 0");
  }
  require_density_matrix(config.rho0, 1e-9, "rho0");

  const CycleMaps maps = build_cycle_maps(config);
  const int steps = config.cycles + 1;

  // Every trajectory writes to its own slots; the ordered reduction below
  // makes the result independent of the thread count.
  std::vector<double> fidelities(static_cast<std::size_t>(n_traj) * steps);
  std::vector<AbState> finals(n_traj);

  auto worker = [&](int begin, int end) {
    for (int t = begin; t < end; ++t) {
      TrajectoryRecord rec = run_with_maps(maps, config, t);
      std::copy(rec.fidelities.begin(), rec.fidelities.end(),
                fidelities.begin() + static_cast<std::size_t>(t) * steps);
      finals[t] = rec.final_state;
    }
  };

  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  threads = std::min(threads, n_traj);
  if (threads == 1) {
    worker(0, n_traj);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (n_traj + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int begin = w * chunk;
      const int end = std::min(n_traj, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  EnsembleResult result;
  result.mean_fidelity.assign(steps, 0.0);
  result.stderr_fidelity.assign(steps, 0.0);
  result.fraction_below_090.assign(steps, 0.0);
  for (int s = 0; s < steps; ++s) {
    double sum = 0.0, sum2 = 0.0;
    int below = 0;
    for (int t = 0; t < n_traj; ++t) {
      const double f = fidelities[static_cast<std::size_t>(t) * steps + s];
      sum += f;
      sum2 += f * f;
      if (f < 0.9) ++below;
    }
    const double mean = sum / n_traj;
    result.mean_fidelity[s] = mean;
    if (n_traj > 1) {
      const double var = std::max(0.0, (sum2 - n_traj * mean * mean) / (n_traj - 1));
      result.stderr_fidelity[s] = std::sqrt(var / n_traj);
    }
    result.fraction_below_090[s] = static_cast<double>(below) / n_traj;
  }

  AbState mean_state = AbState::Zero();
  for (const AbState& f : finals) mean_state += f;
  mean_state /= static_cast<double>(n_traj);
  result.mean_final_state = mean_state;

  double var_sum = 0.0;
  if (n_traj > 1) {
    for (const AbState& f : finals) var_sum += (f - mean_state).squaredNorm();
    var_sum /= (n_traj - 1);
  }
  result.final_state_stderr = std::sqrt(var_sum / n_traj);
  return result;
}

}  // namespace distill
