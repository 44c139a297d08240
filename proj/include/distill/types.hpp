#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace distill {

using Complex = std::complex<double>;

/// Operator on the three-spin space X⊗A⊗B, basis |s_X s_A s_B⟩ with
/// ↑ = 0 and X the slowest index.
using SpinOperator = Eigen::Matrix<Complex, 8, 8>;

/// Density matrix of the fixed qubit pair AB, basis |s_A s_B⟩.
using AbState = Eigen::Matrix4cd;

/// Spin state of a single flying ancilla.
using XSpinState = Eigen::Matrix2cd;

using SuperMatrix = Eigen::Matrix<Complex, 16, 16>;

inline constexpr double pi = std::numbers::pi;

/// Thrown when an eigensolver fails or a numerical candidate violates its
/// contract (non-Hermitian fixed point, residual too large, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a map has no unique fixed point (degenerate eigenvalue 1).
class NotMixingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Dimensionless problem parameters. All physics depends on the momenta
/// only through kd and qd and on the coupling through mgd/ħ², so the
/// library works with κ = kd, χ = qd and G = mgd/ħ² throughout.
struct PhysicalParams {
  double kappa = pi;        // resonant-leg momentum κ = kd
  double chi = 2.5 * pi;    // off-resonant shake momentum χ = qd
  double coupling = pi;     // G = mgd/ħ²
  int n = 1;                // resonance index, κ_n = nπ
  double delta_kappa = 0.0; // momentum spread (Δk)d
  double eta = 1.0;         // detector efficiency

  /// κ for the ideal resonant leg selected by n.
  double resonant_kappa() const { return n * pi; }

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

inline void PhysicalParams::validate() const {
  if (!(kappa > 0)) throw std::invalid_argument("PhysicalParams: kappa must be > 0");
  if (!(chi > 0)) throw std::invalid_argument("PhysicalParams: chi must be > 0");
  if (coupling == 0.0) throw std::invalid_argument("PhysicalParams: coupling must be nonzero");
  if (n < 1) throw std::invalid_argument("PhysicalParams: n must be >= 1");
  if (!(delta_kappa >= 0)) throw std::invalid_argument("PhysicalParams: delta_kappa must be >= 0");
  if (!(eta >= 0 && eta <= 1)) throw std::invalid_argument("PhysicalParams: eta must be in [0, 1]");
}

}  // namespace distill
