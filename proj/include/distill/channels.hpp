#pragma once

#include "distill/quadrature.hpp"
#include "distill/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace distill {

/// Column-major vectorization of a 4×4 state and its inverse. The matrix of
/// the map ρ ↦ AρB† under this convention is conj(B) ⊗ A.
Eigen::Vector<Complex, 16> vectorize(const AbState& rho);
AbState unvectorize(const Eigen::Vector<Complex, 16>& v);

/// A linear map on AB states, stored as a 16×16 matrix on the vectorized
/// state. The label records where the map came from, for diagnostics.
struct Superoperator {
  SuperMatrix matrix = SuperMatrix::Zero();
  std::string label;

  AbState apply(const AbState& rho) const;
};

/// Composition: (a * b) ρ = a(b(ρ)).
Superoperator operator*(const Superoperator& a, const Superoperator& b);
Superoperator operator+(const Superoperator& a, const Superoperator& b);
Superoperator operator*(double scale, const Superoperator& s);

/// Superoperator form of ρ ↦ PρP for a 4×4 operator P.
Superoperator sandwich_superop(const Eigen::Matrix4cd& p, std::string label);

/// Unpolarized ancilla spin 1_X/2 used by the protocol's default steps.
XSpinState unpolarized_spin();

/// ρ ↦ tr_X{T (ρ_X ⊗ ρ) T†} with the transmission operator at params.kappa;
/// completely positive, trace non-increasing.
Superoperator channel_T(const PhysicalParams& params,
                        const XSpinState& spin_x = unpolarized_spin());
/// Same with the reflection operator.
Superoperator channel_R(const PhysicalParams& params,
                        const XSpinState& spin_x = unpolarized_spin());
/// Full scattering channel T + R; trace preserving.
Superoperator channel_S(const PhysicalParams& params,
                        const XSpinState& spin_x = unpolarized_spin());

/// Channels at an explicit momentum (params supplies the coupling).
Superoperator channel_T_at(double kappa, const PhysicalParams& params,
                           const XSpinState& spin_x = unpolarized_spin());
Superoperator channel_R_at(double kappa, const PhysicalParams& params,
                           const XSpinState& spin_x = unpolarized_spin());
Superoperator channel_S_at(double kappa, const PhysicalParams& params,
                           const XSpinState& spin_x = unpolarized_spin());

/// One protocol cycle: transmission at params.kappa, or reflection followed
/// by an off-resonant shake at params.chi. With kappa = nπ this is the
/// ideal map whose unique fixed point is the singlet. Warns on std::cerr
/// (or *warn; nullptr silences) if chi is within 1e-6·π of a multiple of π,
/// where the triplet→singlet inflow vanishes and the map stops mixing.
Superoperator protocol_map(const PhysicalParams& params);
Superoperator protocol_map(const PhysicalParams& params, std::ostream* warn);

/// True when chi sits within 1e-6·π of a multiple of π (vanishing W).
bool chi_is_resonant(double chi);

enum class DetectorVariant { I, II };

/// Protocol with detectors that miss with probability 1−η. Variant I
/// resends a resonant ancilla after a miss; variant II proceeds to the
/// shake as if a reflection had been seen.
Superoperator detector_map(const PhysicalParams& params, DetectorVariant variant);

/// Distribution of one incident momentum. Point masses, truncated
/// Gaussians (quadrature policy of truncated_gaussian_rule, node count
/// doubled until the averaged map changes by < 1e-11 entrywise), or an
/// explicit discrete distribution.
class MomentumDistribution {
 public:
  static MomentumDistribution point(double kappa);
  static MomentumDistribution gaussian(double center, double width);
  static MomentumDistribution discrete(std::vector<double> nodes,
                                       std::vector<double> weights);

  /// Discretization with ~n nodes (exact for point/discrete kinds).
  QuadratureRule rule(int n) const;
  bool is_parametric() const { return kind_ == Kind::Gaussian; }

 private:
  enum class Kind { Point, Gaussian, Discrete };
  Kind kind_ = Kind::Point;
  double center_ = 0.0;
  double width_ = 0.0;
  QuadratureRule fixed_;
};

/// Average of the cycle map over a distribution of the resonant-leg
/// momentum, with the shake momentum fixed at params.chi.
Superoperator averaged_map(const MomentumDistribution& momentum_k,
                           const PhysicalParams& params);

/// General bilinear average over both momenta.
Superoperator averaged_map(const MomentumDistribution& momentum_k,
                           const MomentumDistribution& momentum_q,
                           const PhysicalParams& params);

/// All 16 eigenvalues, sorted by descending modulus. Trace-preserving maps
/// have |λ₀| = 1.
std::vector<Complex> superop_spectrum(const Superoperator& s);

/// 1 − |λ₁|; positive gap is the necessary and sufficient mixing condition.
double spectral_gap(const Superoperator& s);

/// The unique state with s(ρ) = ρ. Throws NotMixingError when eigenvalue 1
/// is degenerate (gap below 1e-9) and NumericalError when the candidate
/// fails the state or residual checks.
AbState fixed_point(const Superoperator& s);

/// [ρ, s(ρ), ..., s^N(ρ)].
std::vector<AbState> iterate(const Superoperator& s, const AbState& rho0, int cycles);

/// tr{P₋ s^N(1/4)}: singlet fidelity after N cycles, averaged over inputs.
double average_fidelity(const Superoperator& s, int cycles);

/// Diagnostics for the CPT contract.
struct CptReport {
  double trace_defect;       // ‖adjoint applied to 1 minus 1‖
  double hermiticity_defect; // worst ‖s(ρ)† − s(ρ†)‖ over a probe basis
  double choi_min_eigenvalue;

  bool passes(double tp_tol = 1e-12, double herm_tol = 1e-12,
              double choi_floor = -1e-10) const {
    return trace_defect < tp_tol && hermiticity_defect < herm_tol &&
           choi_min_eigenvalue >= choi_floor;
  }
};

Eigen::Matrix<Complex, 16, 16> choi_matrix(const Superoperator& s);
CptReport certify_cpt(const Superoperator& s);

}  // namespace distill
