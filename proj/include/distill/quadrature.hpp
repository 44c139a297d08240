#pragma once

#include <vector>

namespace distill {

/// A discrete rule: nodes and matching weights, same length.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss–Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Quadrature rule for a Gaussian of the given center and width, truncated
/// to k > 0 and to the window center ± 6·width, with weights renormalized
/// to unit total mass. Throws if the truncation leaves no mass.
QuadratureRule truncated_gaussian_rule(double center, double width, int n);

}  // namespace distill
