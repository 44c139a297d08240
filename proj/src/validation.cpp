#include "distill/channels.hpp"
#include "distill/experiments.hpp"
#include "distill/rng.hpp"
#include "distill/scattering.hpp"
#include "distill/sector_model.hpp"
#include "distill/spin_algebra.hpp"
#include "distill/trajectories.hpp"

#include <cmath>
#include <ostream>

namespace distill {

namespace {

Eigen::MatrixXcd random_complex(SplitMix64& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    }
  }
  return m;
}

AbState random_state(SplitMix64& rng) {
  const Eigen::Matrix4cd a = random_complex(rng, 4, 4);
  Eigen::Matrix4cd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

bool run_validation(std::ostream& log) {
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, double worst) {
    log << "  [" << (ok ? "PASS" : "FAIL") << "] " << name << "  (defect "
        << format_value(worst) << ")\n";
    all_ok = all_ok && ok;
  };

  SplitMix64 rng(0x5eed);

  {  // projector algebra
    const Projectors& p = projectors();
    double worst = 0.0;
    for (const SpinOperator* q : {&p.p_minus, &p.p_plus, &p.q_three_half, &p.q_one_half}) {
      worst = std::max(worst, ((*q) * (*q) - (*q)).norm());
      worst = std::max(worst, ((*q) - q->adjoint()).norm());
    }
    worst = std::max(worst, (p.p_minus + p.p_plus - SpinOperator::Identity()).norm());
    worst = std::max(worst,
                     (p.q_three_half + p.q_one_half - SpinOperator::Identity()).norm());
    worst = std::max(worst, (p.q_three_half * p.p_minus).norm());
    worst = std::max(worst, (p.k_minus - p.k_plus.adjoint()).norm());
    report("projector algebra", worst < 1e-12, worst);
  }

  {  // unitarity on a random grid
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double kappa = (0.1 + 5.9 * rng.uniform()) * pi;
      const double g = 0.1 + 9.9 * rng.uniform();
      const auto [t, r, kk] = scatter_operators(kappa, g);
      worst = std::max(worst, (t.adjoint() * t + r.adjoint() * r -
                               SpinOperator::Identity()).norm());
    }
    report("unitarity T†T + R†R = 1 (200 random points)", worst < 1e-12, worst);
  }

  {  // resonant specialization
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      for (double g : {0.5, pi, 5.0}) {
        const ScatterPair a = scatter_operators(n * pi, g);
        const ScatterPair b = resonant_operators(n, g);
        worst = std::max(worst, (a.transmission - b.transmission).norm());
        worst = std::max(worst, (a.reflection - b.reflection).norm());
      }
    }
    report("resonant closed forms", worst < 1e-12, worst);
  }

  {  // singlet transparency
    PhysicalParams p;
    XSpinState up = XSpinState::Zero();
    up(0, 0) = 1.0;
    const double worst =
        std::abs(transmission_probability(p, up, singlet_projector_ab()) - 1.0);
    report("singlet transparent at resonance", worst < 1e-12, worst);
  }

  {  // CPT certification of the map zoo
    PhysicalParams p;
    PhysicalParams off = p;
    off.kappa = 0.97 * pi;
    PhysicalParams det = p;
    det.eta = 0.5;
    const Superoperator maps[] = {
        protocol_map(p, nullptr), protocol_map(off, nullptr),
        averaged_map(MomentumDistribution::gaussian(pi, 0.05 * pi), p),
        detector_map(det, DetectorVariant::I),
        detector_map(det, DetectorVariant::II)};
    double worst = 0.0;
    bool ok = true;
    for (const Superoperator& m : maps) {
      const CptReport r = certify_cpt(m);
      ok = ok && r.passes();
      worst = std::max({worst, r.trace_defect, r.hermiticity_defect,
                        std::max(0.0, -r.choi_min_eigenvalue)});
    }
    report("CPT certification (ideal/off-resonant/averaged/detector)", ok, worst);
  }

  {  // fixed point of the ideal map
    const AbState fp = fixed_point(protocol_map(PhysicalParams{}, nullptr));
    const double worst = (fp - AbState(singlet_projector_ab())).norm();
    report("ideal fixed point is the singlet", worst < 1e-10, worst);
  }

  {  // sector matrices against full-channel extraction
    const AbState triplet_state = triplet_projector_ab() / 3.0;
    const AbState singlet_state = singlet_projector_ab();
    const Eigen::Matrix4cd pm = singlet_projector_ab();
    const Eigen::Matrix4cd pp = triplet_projector_ab();
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      PhysicalParams p;
      p.kappa = (0.1 + 5.9 * rng.uniform()) * pi;
      p.coupling = 0.1 + 9.9 * rng.uniform();
      const Superoperator ch[] = {channel_T(p), channel_R(p)};
      const SectorMatrix an[] = {sector_T(p.kappa, p.coupling),
                                 sector_R(p.kappa, p.coupling)};
      for (int c = 0; c < 2; ++c) {
        Eigen::Matrix2d extracted;
        for (auto [col, rho] : {std::pair{0, singlet_state}, {1, triplet_state}}) {
          const AbState out = ch[c].apply(rho);
          extracted(0, col) = (pm * out).trace().real();
          extracted(1, col) = (pp * out).trace().real();
        }
        worst = std::max(worst, (extracted - an[c].entries).cwiseAbs().maxCoeff());
      }
    }
    report("sector matrices match channel extraction (100 random points)",
           worst < 1e-12, worst);
  }

  {  // closed-form convergence vs full channel
    const Superoperator m = protocol_map(PhysicalParams{}, nullptr);
    double worst = 0.0;
    AbState rho = AbState::Identity() / 4.0;
    for (int step = 0; step <= 25; ++step) {
      worst = std::max(worst, std::abs(singlet_fidelity(rho) -
                                       closed_form_curve(1, 2.5 * pi, pi, 0.25, step)));
      rho = m.apply(rho);
    }
    report("closed-form fidelity curve (N <= 25)", worst < 1e-10, worst);
  }

  {  // detector endpoints
    PhysicalParams p;
    p.eta = 0.5;
    const double f1 = fixed_fidelity(detector_sector(1, p.chi, p.coupling, 0.5,
                                                     DetectorCase::I));
    const double f2 = fixed_fidelity(detector_sector(1, p.chi, p.coupling, 0.5,
                                                     DetectorCase::II));
    const double v = v_coefficient(1, p.coupling);
    const double expected = (0.5 + 0.5 * v) / (4.0 * 0.5 + 0.5 * v);
    const double worst = std::max(std::abs(f1 - 1.0), std::abs(f2 - expected));
    report("detector fixed-point fidelities", worst < 1e-10, worst);
  }

  {  // W vanishes exactly on resonant chi
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m) worst = std::max(worst, w_coefficient(m * pi, pi));
    report("W = 0 at resonant shake momenta", worst < 1e-12, worst);
  }

  {  // trajectory unraveling: branch-weighted states reproduce the channel
    PhysicalParams p;
    const Superoperator t = channel_T(p);
    const Superoperator sr = channel_S_at(p.chi, p) * channel_R(p);
    const Superoperator m = protocol_map(p, nullptr);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const AbState rho = random_state(rng);
      worst = std::max(worst, (t.apply(rho) + sr.apply(rho) - m.apply(rho)).norm());
    }
    report("per-cycle unraveling identity", worst < 1e-12, worst);
  }

  {  // trajectory determinism
    TrajectoryConfig tc;
    tc.cycles = 20;
    tc.seed = 42;
    const TrajectoryRecord a = run_trajectory(tc, 3);
    const TrajectoryRecord b = run_trajectory(tc, 3);
    const bool ok = a.outcomes == b.outcomes && a.fidelities == b.fidelities &&
                    a.final_state == b.final_state;
    report("trajectories are reproducible", ok, ok ? 0.0 : 1.0);
  }

  log << (all_ok ? "validate: all checks passed\n"
                 : "validate: FAILURES detected\n");
  return all_ok;
}

}  // namespace distill
