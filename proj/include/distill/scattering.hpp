#pragma once

#include "distill/types.hpp"

namespace distill {

/// Scalar amplitudes entering the transmission/reflection operators.
/// omega = G/κ is the dimensionless coupling seen at momentum κ.
struct ScatterCoefficients {
  double omega;
  Complex alpha;
  Complex beta;
};

/// Evaluates ω, α, β at dimensionless momentum κ and coupling G.
/// Exact closed forms, regular at resonances; throws for κ ≤ 0.
/// Momenta below ~1e-3·π are outside the validated range (ω diverges).
ScatterCoefficients scatter_coefficients(double kappa, double coupling);

/// Transmission/reflection operator pair at a fixed momentum.
struct ScatterPair {
  SpinOperator transmission;
  SpinOperator reflection;
  double kappa;
};

/// Full 8×8 operators assembled from the projector algebra. Satisfies
/// T†T + R†R = 1 for any κ > 0.
ScatterPair scatter_operators(double kappa, double coupling);
ScatterPair scatter_operators(const PhysicalParams& params);

/// Simplified closed forms at the resonance κ_n = nπ. Built independently
/// of scatter_operators; agrees with it at κ = nπ.
ScatterPair resonant_operators(int n, double coupling);

/// Probability that the ancilla is transmitted: tr{T (ρ_X ⊗ ρ_AB) T†}.
/// Inputs are checked to be density matrices (tolerance 1e-9).
double transmission_probability(const PhysicalParams& params,
                                const XSpinState& spin_x, const AbState& rho_ab);

}  // namespace distill
