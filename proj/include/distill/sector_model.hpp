#pragma once

#include "distill/types.hpp"

#include <string>

namespace distill {

/// Singlet/triplet population transfer of one scattering event, row and
/// column order (singlet, triplet). Full scattering maps are column
/// stochastic; transmission-only and reflection-only matrices have column
/// sums equal to the respective branch probabilities.
struct SectorMatrix {
  Eigen::Matrix2d entries = Eigen::Matrix2d::Zero();
  std::string label;
};

/// Triplet→singlet population flow per off-resonant shake. Vanishes
/// exactly at multiples of π and is positive everywhere else.
double w_coefficient(double chi, double coupling);

/// Reflection probability of a resonant ancilla off the triplet sector.
double v_coefficient(int n, double coupling);

/// Closed-form sector matrices of the transmission and reflection branches.
SectorMatrix sector_T(double kappa, double coupling);
SectorMatrix sector_R(double kappa, double coupling);
/// Full scattering event: [[1−3W, W], [3W, 1−W]].
SectorMatrix sector_S(double chi, double coupling);

/// One protocol cycle, sector_T(κ) + sector_S(χ)·sector_R(κ).
SectorMatrix sector_protocol(double kappa, double chi, double coupling);
/// Resonant specialization [[1, WV], [0, 1−WV]].
SectorMatrix sector_ideal(int n, double chi, double coupling);

/// Fidelity of the fixed point, m⁻⁺ / (1 − m⁻⁻ + m⁻⁺). Throws
/// NumericalError when the denominator vanishes (degenerate population
/// dynamics, e.g. a purely resonant cycle).
double fixed_fidelity(const SectorMatrix& m);

enum class DetectorCase { I, II };

/// Sector matrices of the detector-limited protocol at efficiency η.
SectorMatrix detector_sector(int n, double chi, double coupling, double eta,
                             DetectorCase variant);

struct AveragedSector {
  SectorMatrix matrix;
  double fidelity;
};

/// Sector matrix and fixed-point fidelity with the resonant-leg momentum
/// Gaussian-distributed around nπ (width delta_kappa, truncated to k > 0,
/// quadrature refined until the fidelity is converged).
AveragedSector averaged_sector(int n, double delta_kappa, double chi,
                               double coupling);

/// Population recursion of the ideal cycle: 1 − (1 − F0)(1 − WV)^N.
double closed_form_curve(int n, double chi, double coupling, double f0, int cycles);

}  // namespace distill
