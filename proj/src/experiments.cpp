#include "distill/experiments.hpp"

#include "distill/channels.hpp"
#include "distill/scattering.hpp"
#include "distill/sector_model.hpp"
#include "distill/spin_algebra.hpp"
#include "distill/trajectories.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#ifndef DISTILL_GIT_REVISION
#define DISTILL_GIT_REVISION "unknown"
#endif

namespace distill {

std::vector<double> GridSpec::points() const {
  if (count < 1 || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
    throw UsageError("invalid-grid: need count >= 1 and finite stop >= start");
  }
  std::vector<double> pts(count);
  if (count == 1) {
    pts[0] = start;
  } else {
    const double step = (stop - start) / (count - 1);
    for (int i = 0; i < count; ++i) pts[i] = start + i * step;
  }
  return pts;
}

std::string format_value(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 15);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

namespace {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const int chunk = (n + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const int begin = w * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin < end) {
      pool.emplace_back([&fn, begin, end] {
        for (int i = begin; i < end; ++i) fn(i);
      });
    }
  }
  for (auto& th : pool) th.join();
}

/// Accumulates rows, then writes header + rows and the ".meta" sidecar.
class CsvWriter {
 public:
  CsvWriter(std::string path, std::vector<std::string> columns)
      : path_(std::move(path)), columns_(std::move(columns)) {}

  void add_row(const std::vector<double>& values) {
    min_ = std::min(min_, *std::min_element(values.begin(), values.end()));
    max_ = std::max(max_, *std::max_element(values.begin(), values.end()));
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) line += ',';
      line += format_value(values[i]);
    }
    rows_.push_back(std::move(line));
  }

  void write(const std::map<std::string, std::string>& metadata) const {
    std::ofstream csv(path_, std::ios::trunc);
    if (!csv) throw UsageError("unwritable-output: " + path_);
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      csv << (i > 0 ? "," : "") << columns_[i];
    }
    csv << '\n';
    for (const std::string& row : rows_) csv << row << '\n';
    if (!csv.flush()) throw UsageError("unwritable-output: " + path_);

    std::ofstream meta(path_ + ".meta", std::ios::trunc);
    if (!meta) throw UsageError("unwritable-output: " + path_ + ".meta");
    meta << "git_revision = " << DISTILL_GIT_REVISION << '\n';
    for (const auto& [key, value] : metadata) meta << key << " = " << value << '\n';
  }

  long rows() const { return static_cast<long>(rows_.size()); }
  double min_value() const { return rows_.empty() ? 0.0 : min_; }
  double max_value() const { return rows_.empty() ? 0.0 : max_; }

 private:
  std::string path_;
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

GridSpec with_default(GridSpec user, double start, double stop, int count) {
  if (user.is_set()) return user;
  return {start, stop, count};
}

int cycles_or(const ExperimentConfig& c, int fallback) {
  if (c.cycles < 0) return fallback;
  return c.cycles;
}

struct Context {
  const ExperimentConfig& config;
  CsvWriter csv;
  std::map<std::string, std::string> meta;
  std::vector<std::pair<std::string, bool>> checks;

  Context(const ExperimentConfig& cfg, std::vector<std::string> columns)
      : config(cfg),
        csv(cfg.out.empty() ? cfg.experiment + ".csv" : cfg.out,
            std::move(columns)) {
    meta["experiment"] = cfg.experiment;
    meta["g_pi"] = format_value(cfg.params.coupling / pi);
    meta["chi_pi"] = format_value(cfg.params.chi / pi);
    meta["n"] = std::to_string(cfg.params.n);
  }

  void check(const std::string& name, bool ok) { checks.emplace_back(name, ok); }

  void grid_meta(const char* name, const GridSpec& g) {
    meta[std::string(name) + "_start"] = format_value(g.start);
    meta[std::string(name) + "_stop"] = format_value(g.stop);
    meta[std::string(name) + "_count"] = std::to_string(g.count);
  }
};

// ---------------------------------------------------------------------------
// fig2: transmission probability of an up-polarized ancilla off the singlet,
// over the (κ, G) plane. Ridges of perfect transmission at κ = nπ.

void run_fig2(Context& ctx) {
  const GridSpec kg = with_default(ctx.config.kappa_grid, 0.05, 6.0, 200);
  const GridSpec gg = with_default(ctx.config.g_grid, 0.1, 4.0, 50);
  ctx.grid_meta("kappa_pi", kg);
  ctx.grid_meta("g_pi", gg);
  ctx.meta["tolerance_resonance"] = "1e-12";

  const std::vector<double> ks = kg.points();
  const std::vector<double> gs = gg.points();
  XSpinState up = XSpinState::Zero();
  up(0, 0) = 1.0;
  const AbState singlet = singlet_projector_ab();

  std::vector<double> values(ks.size() * gs.size());
  parallel_for(static_cast<int>(values.size()), ctx.config.threads, [&](int idx) {
    const std::size_t i = idx / gs.size(), j = idx % gs.size();
    PhysicalParams p = ctx.config.params;
    p.kappa = ks[i] * pi;
    p.coupling = gs[j] * pi;
    values[idx] = transmission_probability(p, up, singlet);
  });

  double lo = 1.0, hi = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      const double v = values[i * gs.size() + j];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      ctx.csv.add_row({ks[i], gs[j], v});
    }
  }
  ctx.check("probabilities within [0, 1]", lo > -1e-12 && hi < 1.0 + 1e-12);

  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (double g : gs) {
      PhysicalParams p = ctx.config.params;
      p.kappa = n * pi;
      p.coupling = g * pi;
      worst = std::max(worst, std::abs(transmission_probability(p, up, singlet) - 1.0));
    }
  }
  ctx.check("perfect transmission at kappa = n*pi (1e-12)", worst < 1e-12);
}

// ---------------------------------------------------------------------------
// fig3: average fidelity F(N) for n = 1..5.

void run_fig3(Context& ctx) {
  const int cycles = cycles_or(ctx.config, 50);
  ctx.meta["cycles"] = std::to_string(cycles);

  std::vector<std::vector<double>> fid(5);
  parallel_for(5, ctx.config.threads, [&](int i) {
    PhysicalParams p = ctx.config.params;
    p.n = i + 1;
    p.kappa = p.resonant_kappa();
    const Superoperator m = protocol_map(p, nullptr);
    AbState rho = AbState::Identity() / 4.0;
    fid[i].push_back(singlet_fidelity(rho));
    for (int step = 0; step < cycles; ++step) {
      rho = m.apply(rho);
      fid[i].push_back(singlet_fidelity(rho));
    }
  });

  for (int step = 0; step <= cycles; ++step) {
    std::vector<double> row = {static_cast<double>(step)};
    for (int i = 0; i < 5; ++i) row.push_back(fid[i][step]);
    ctx.csv.add_row(row);
  }

  bool start_ok = true, monotone = true, ordered = true;
  for (int i = 0; i < 5; ++i) {
    start_ok = start_ok && std::abs(fid[i][0] - 0.25) < 1e-12;
    for (int s = 0; s < cycles; ++s) {
      monotone = monotone && fid[i][s + 1] >= fid[i][s] - 1e-12;
    }
  }
  for (int s = 1; s <= cycles; ++s) {
    for (int i = 0; i + 1 < 5; ++i) {
      ordered = ordered && fid[i][s] > fid[i + 1][s] - 1e-12;
    }
  }
  ctx.check("F(0) = 0.25", start_ok);
  ctx.check("fidelity non-decreasing in N", monotone);
  ctx.check("curves ordered n = 1..5", ordered);
  if (cycles >= 25) ctx.check("F(25) >= 0.99 for n = 1", fid[0][25] >= 0.99);
}

// ---------------------------------------------------------------------------
// fig5a/fig5b: F(N) as a function of the shake momentum q or the coupling g.

void run_fig5(Context& ctx, bool sweep_chi) {
  const int cycles = cycles_or(ctx.config, 50);
  const GridSpec grid = sweep_chi
                            ? with_default(ctx.config.chi_grid, 0.05, 4.0, 80)
                            : with_default(ctx.config.g_grid, 0.05, 4.0, 80);
  ctx.grid_meta(sweep_chi ? "chi_pi" : "g_pi", grid);
  ctx.meta["cycles"] = std::to_string(cycles);

  const std::vector<double> xs = grid.points();
  std::vector<std::vector<double>> fid(xs.size());
  parallel_for(static_cast<int>(xs.size()), ctx.config.threads, [&](int i) {
    PhysicalParams p = ctx.config.params;
    p.kappa = p.resonant_kappa();
    if (sweep_chi) {
      p.chi = xs[i] * pi;
    } else {
      p.coupling = xs[i] * pi;
    }
    const Superoperator m = protocol_map(p, nullptr);
    AbState rho = AbState::Identity() / 4.0;
    fid[i].push_back(singlet_fidelity(rho));
    for (int step = 0; step < cycles; ++step) {
      rho = m.apply(rho);
      fid[i].push_back(singlet_fidelity(rho));
    }
  });

  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int step = 0; step <= cycles; ++step) {
      ctx.csv.add_row({xs[i], static_cast<double>(step), fid[i][step]});
    }
  }

  bool in_range = true, monotone = true;
  for (const auto& curve : fid) {
    for (std::size_t s = 0; s < curve.size(); ++s) {
      in_range = in_range && curve[s] > -1e-12 && curve[s] < 1.0 + 1e-12;
      if (s > 0) monotone = monotone && curve[s] >= curve[s - 1] - 1e-12;
    }
  }
  ctx.check("fidelities within [0, 1]", in_range);
  ctx.check("fidelity non-decreasing in N", monotone);
}

// ---------------------------------------------------------------------------
// fig6: two largest eigenvalue moduli of M_{k,q} along k.

void run_fig6(Context& ctx) {
  const GridSpec kg = with_default(ctx.config.kappa_grid, 0.5, 3.5, 301);
  ctx.grid_meta("kappa_pi", kg);
  ctx.meta["tolerance_lambda0"] = "1e-10";

  const std::vector<double> ks = kg.points();
  std::vector<double> lam0(ks.size()), lam1(ks.size());
  parallel_for(static_cast<int>(ks.size()), ctx.config.threads, [&](int i) {
    PhysicalParams p = ctx.config.params;
    p.kappa = ks[i] * pi;
    const auto spectrum = superop_spectrum(protocol_map(p, nullptr));
    lam0[i] = std::abs(spectrum[0]);
    lam1[i] = std::abs(spectrum[1]);
  });

  double worst0 = 0.0, worst1 = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    ctx.csv.add_row({ks[i], lam0[i], lam1[i]});
    worst0 = std::max(worst0, std::abs(lam0[i] - 1.0));
    worst1 = std::max(worst1, lam1[i]);
  }
  ctx.check("|lambda0| = 1 within 1e-10", worst0 < 1e-10);
  ctx.check("gap persists (|lambda1| < 1)", worst1 < 1.0 - 1e-9);
}

// ---------------------------------------------------------------------------
// fig7: fixed-point fidelity F_*(k).

void run_fig7(Context& ctx) {
  const GridSpec kg = with_default(ctx.config.kappa_grid, 0.85, 3.15, 1151);
  ctx.grid_meta("kappa_pi", kg);

  const std::vector<double> ks = kg.points();
  std::vector<double> f(ks.size());
  parallel_for(static_cast<int>(ks.size()), ctx.config.threads, [&](int i) {
    f[i] = fixed_fidelity(sector_protocol(ks[i] * pi, ctx.config.params.chi,
                                          ctx.config.params.coupling));
  });

  bool in_range = true;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    ctx.csv.add_row({ks[i], f[i]});
    in_range = in_range && f[i] > -1e-12 && f[i] < 1.0 + 1e-12;
  }
  ctx.check("fidelities within [0, 1]", in_range);

  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    worst = std::max(worst,
                     std::abs(fixed_fidelity(sector_protocol(
                                  n * pi, ctx.config.params.chi,
                                  ctx.config.params.coupling)) -
                              1.0));
  }
  ctx.check("F_* = 1 at resonances (1e-12)", worst < 1e-12);
}

// ---------------------------------------------------------------------------
// fig8a/fig8b: fixed-point fidelity under a Gaussian momentum spread.

void run_fig8a(Context& ctx) {
  const GridSpec dg = with_default(ctx.config.dk_grid, 0.0, 0.2, 81);
  ctx.grid_meta("dk_pi", dg);

  const std::vector<double> dks = dg.points();
  std::vector<std::array<double, 3>> f(dks.size());
  parallel_for(static_cast<int>(dks.size()), ctx.config.threads, [&](int i) {
    for (int n = 1; n <= 3; ++n) {
      f[i][n - 1] = averaged_sector(n, dks[i] * pi, ctx.config.params.chi,
                                    ctx.config.params.coupling)
                        .fidelity;
    }
  });

  for (std::size_t i = 0; i < dks.size(); ++i) {
    ctx.csv.add_row({dks[i], f[i][0], f[i][1], f[i][2]});
  }

  bool at_zero = true, monotone = true, ordered = true;
  for (int n = 0; n < 3; ++n) {
    if (dks.front() == 0.0) at_zero = at_zero && std::abs(f[0][n] - 1.0) < 1e-12;
    for (std::size_t i = 1; i + 1 < dks.size(); ++i) {
      monotone = monotone && f[i + 1][n] < f[i][n] + 1e-12;
    }
  }
  for (std::size_t i = 0; i < dks.size(); ++i) {
    if (dks[i] <= 0.0) continue;
    ordered = ordered && f[i][0] < f[i][1] && f[i][1] < f[i][2];
  }
  ctx.check("fidelity 1 at zero width", at_zero);
  ctx.check("fidelity decreasing in dk", monotone);
  ctx.check("fidelity increasing in n at equal width", ordered);
}

void run_fig8b(Context& ctx) {
  const GridSpec dg = with_default(ctx.config.dk_grid, 0.0, 0.2, 41);
  const GridSpec gg = with_default(ctx.config.g_grid, 0.2, 4.0, 40);
  ctx.grid_meta("dk_pi", dg);
  ctx.grid_meta("g_pi", gg);

  const std::vector<double> dks = dg.points();
  const std::vector<double> gs = gg.points();
  std::vector<double> f(dks.size() * gs.size());
  parallel_for(static_cast<int>(f.size()), ctx.config.threads, [&](int idx) {
    const std::size_t i = idx / gs.size(), j = idx % gs.size();
    f[idx] = averaged_sector(ctx.config.params.n, dks[i] * pi,
                             ctx.config.params.chi, gs[j] * pi)
                 .fidelity;
  });

  bool in_range = true;
  for (std::size_t i = 0; i < dks.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      const double v = f[i * gs.size() + j];
      ctx.csv.add_row({dks[i], gs[j], v});
      in_range = in_range && v > -1e-12 && v < 1.0 + 1e-12;
    }
  }
  ctx.check("fidelities within [0, 1]", in_range);
}

// ---------------------------------------------------------------------------
// fig9: convergence of the momentum-averaged protocol.

void run_fig9(Context& ctx) {
  const int cycles = cycles_or(ctx.config, 100);
  const double dk = ctx.config.params.delta_kappa > 0
                        ? ctx.config.params.delta_kappa
                        : 0.05 * pi;
  ctx.meta["cycles"] = std::to_string(cycles);
  ctx.meta["dk_pi"] = format_value(dk / pi);

  std::vector<std::vector<double>> fid(3);
  std::array<double, 3> plateau{};
  parallel_for(3, ctx.config.threads, [&](int i) {
    const int n = i + 1;
    PhysicalParams p = ctx.config.params;
    p.n = n;
    const Superoperator m =
        averaged_map(MomentumDistribution::gaussian(n * pi, dk), p);
    AbState rho = AbState::Identity() / 4.0;
    fid[i].push_back(singlet_fidelity(rho));
    for (int step = 0; step < cycles; ++step) {
      rho = m.apply(rho);
      fid[i].push_back(singlet_fidelity(rho));
    }
    plateau[i] = averaged_sector(n, dk, p.chi, p.coupling).fidelity;
  });

  for (int step = 0; step <= cycles; ++step) {
    ctx.csv.add_row({static_cast<double>(step), fid[0][step], fid[1][step],
                     fid[2][step]});
  }

  bool monotone = true, converges = true;
  for (int i = 0; i < 3; ++i) {
    for (int s = 0; s < cycles; ++s) {
      monotone = monotone && fid[i][s + 1] >= fid[i][s] - 1e-12;
    }
    converges = converges && std::abs(fid[i][cycles] - plateau[i]) < 1e-2;
  }
  ctx.check("fidelity non-decreasing in N", monotone);
  ctx.check("curves approach the averaged fixed-point fidelity", converges);
}

// ---------------------------------------------------------------------------
// fig10: convergence with inefficient detectors, strategy I.

void run_fig10(Context& ctx) {
  const int cycles = cycles_or(ctx.config, 100);
  const GridSpec eg = with_default(ctx.config.eta_grid, 0.25, 1.0, 4);
  ctx.grid_meta("eta", eg);
  ctx.meta["cycles"] = std::to_string(cycles);

  const std::vector<double> etas = eg.points();
  std::vector<std::vector<double>> fid(etas.size());
  parallel_for(static_cast<int>(etas.size()), ctx.config.threads, [&](int i) {
    PhysicalParams p = ctx.config.params;
    p.kappa = p.resonant_kappa();
    p.eta = etas[i];
    const Superoperator m = detector_map(p, DetectorVariant::I);
    AbState rho = AbState::Identity() / 4.0;
    fid[i].push_back(singlet_fidelity(rho));
    for (int step = 0; step < cycles; ++step) {
      rho = m.apply(rho);
      fid[i].push_back(singlet_fidelity(rho));
    }
  });

  for (std::size_t i = 0; i < etas.size(); ++i) {
    for (int step = 0; step <= cycles; ++step) {
      ctx.csv.add_row({etas[i], static_cast<double>(step), fid[i][step]});
    }
  }

  bool monotone = true, ordered = true;
  for (std::size_t i = 0; i < etas.size(); ++i) {
    for (int s = 0; s < cycles; ++s) {
      monotone = monotone && fid[i][s + 1] >= fid[i][s] - 1e-12;
    }
  }
  for (int s = 1; s <= cycles; ++s) {
    for (std::size_t i = 0; i + 1 < etas.size(); ++i) {
      ordered = ordered && fid[i][s] <= fid[i + 1][s] + 1e-12;
    }
  }
  ctx.check("fidelity non-decreasing in N", monotone);
  ctx.check("larger eta converges faster", ordered);
}

// ---------------------------------------------------------------------------
// wq-surface: triplet->singlet inflow coefficient over the (χ, G) plane.

void run_wq_surface(Context& ctx) {
  const GridSpec cg = with_default(ctx.config.chi_grid, 0.05, 6.0, 240);
  const GridSpec gg = with_default(ctx.config.g_grid, 0.1, 4.0, 50);
  ctx.grid_meta("chi_pi", cg);
  ctx.grid_meta("g_pi", gg);

  const std::vector<double> chis = cg.points();
  const std::vector<double> gs = gg.points();
  std::vector<double> w(chis.size() * gs.size());
  parallel_for(static_cast<int>(w.size()), ctx.config.threads, [&](int idx) {
    const std::size_t i = idx / gs.size(), j = idx % gs.size();
    w[idx] = w_coefficient(chis[i] * pi, gs[j] * pi);
  });

  bool nonneg = true;
  for (std::size_t i = 0; i < chis.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      const double v = w[i * gs.size() + j];
      ctx.csv.add_row({chis[i], gs[j], v});
      nonneg = nonneg && v > -1e-15;
    }
  }
  ctx.check("W >= 0 everywhere", nonneg);

  double worst = 0.0;
  for (int m = 1; m <= 5; ++m) {
    for (double g : gs) worst = std::max(worst, w_coefficient(m * pi, g * pi));
  }
  ctx.check("W vanishes at resonant chi (1e-12)", worst < 1e-12);
}

// ---------------------------------------------------------------------------
// trajectories: Monte Carlo ensemble of the feedback protocol.

void run_trajectories(Context& ctx) {
  TrajectoryConfig tc;
  tc.params = ctx.config.params;
  tc.params.kappa = tc.params.resonant_kappa();
  tc.cycles = cycles_or(ctx.config, 30);
  tc.seed = ctx.config.seed;
  if (ctx.config.variant == "ideal") {
    tc.variant = ProtocolVariant::Ideal;
  } else if (ctx.config.variant == "detector1") {
    tc.variant = ProtocolVariant::DetectorI;
  } else if (ctx.config.variant == "detector2") {
    tc.variant = ProtocolVariant::DetectorII;
  } else {
    throw UsageError("usage: unknown variant '" + ctx.config.variant +
                     "' (ideal, detector1, detector2)");
  }
  ctx.meta["cycles"] = std::to_string(tc.cycles);
  ctx.meta["n_traj"] = std::to_string(ctx.config.n_traj);
  ctx.meta["seed"] = std::to_string(tc.seed);
  ctx.meta["variant"] = ctx.config.variant;
  ctx.meta["eta"] = format_value(tc.params.eta);

  const EnsembleResult res =
      ensemble_average(tc, ctx.config.n_traj, ctx.config.threads);

  // Matching deterministic channel for the consistency check.
  Superoperator m;
  if (tc.variant == ProtocolVariant::Ideal) {
    m = protocol_map(tc.params, nullptr);
  } else {
    m = detector_map(tc.params, tc.variant == ProtocolVariant::DetectorI
                                    ? DetectorVariant::I
                                    : DetectorVariant::II);
  }
  AbState rho = tc.rho0;
  bool consistent = true;
  for (int s = 0; s <= tc.cycles; ++s) {
    const double expected = singlet_fidelity(rho);
    const double slack = 4.0 * res.stderr_fidelity[s] + 1e-12;
    consistent = consistent && std::abs(res.mean_fidelity[s] - expected) < slack;
    ctx.csv.add_row({static_cast<double>(s), res.mean_fidelity[s],
                     res.stderr_fidelity[s], res.fraction_below_090[s]});
    rho = m.apply(rho);
  }
  ctx.check("ensemble mean matches deterministic iteration (4 sigma)", consistent);
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {
      "fig2",  "fig3",  "fig5a", "fig5b",      "fig6",
      "fig7",  "fig8a", "fig8b", "fig9",       "fig10",
      "wq-surface", "trajectories"};
  return ids;
}

ExperimentSummary run_experiment(const ExperimentConfig& config, std::ostream& log) {
  config.params.validate();

  std::vector<std::string> columns;
  const std::string& id = config.experiment;
  if (id == "fig2") {
    columns = {"kappa_pi", "g_pi", "transmission"};
  } else if (id == "fig3") {
    columns = {"cycles", "fidelity_n1", "fidelity_n2", "fidelity_n3",
               "fidelity_n4", "fidelity_n5"};
  } else if (id == "fig5a") {
    columns = {"chi_pi", "cycles", "fidelity"};
  } else if (id == "fig5b") {
    columns = {"g_pi", "cycles", "fidelity"};
  } else if (id == "fig6") {
    columns = {"kappa_pi", "lambda0", "lambda1"};
  } else if (id == "fig7") {
    columns = {"kappa_pi", "fidelity"};
  } else if (id == "fig8a") {
    columns = {"dk_pi", "fidelity_n1", "fidelity_n2", "fidelity_n3"};
  } else if (id == "fig8b") {
    columns = {"dk_pi", "g_pi", "fidelity"};
  } else if (id == "fig9") {
    columns = {"cycles", "fidelity_n1", "fidelity_n2", "fidelity_n3"};
  } else if (id == "fig10") {
    columns = {"eta", "cycles", "fidelity"};
  } else if (id == "wq-surface") {
    columns = {"chi_pi", "g_pi", "w"};
  } else if (id == "trajectories") {
    columns = {"cycle", "mean_fidelity", "stderr_fidelity", "fraction_below_0.9"};
  } else {
    throw UsageError("usage: unknown experiment '" + id + "'");
  }

  Context ctx(config, std::move(columns));
  if (id == "fig2") run_fig2(ctx);
  else if (id == "fig3") run_fig3(ctx);
  else if (id == "fig5a") run_fig5(ctx, true);
  else if (id == "fig5b") run_fig5(ctx, false);
  else if (id == "fig6") run_fig6(ctx);
  else if (id == "fig7") run_fig7(ctx);
  else if (id == "fig8a") run_fig8a(ctx);
  else if (id == "fig8b") run_fig8b(ctx);
  else if (id == "fig9") run_fig9(ctx);
  else if (id == "fig10") run_fig10(ctx);
  else if (id == "wq-surface") run_wq_surface(ctx);
  else if (id == "trajectories") run_trajectories(ctx);

  ctx.csv.write(ctx.meta);

  ExperimentSummary summary;
  summary.csv_path = config.out.empty() ? id + ".csv" : config.out;
  summary.rows = ctx.csv.rows();
  summary.min_value = ctx.csv.min_value();
  summary.max_value = ctx.csv.max_value();
  summary.checks = ctx.checks;

  log << id << ": " << summary.rows << " rows -> " << summary.csv_path
      << "  (values in [" << format_value(summary.min_value) << ", "
      << format_value(summary.max_value) << "])\n";
  for (const auto& [name, ok] : summary.checks) {
    log << "  [" << (ok ? "PASS" : "FAIL") << "] " << name << '\n';
  }
  return summary;
}

}  // namespace distill
