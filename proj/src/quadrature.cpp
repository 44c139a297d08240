#include "distill/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <stdexcept>

namespace distill {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");

  // Positive zeros of P_n; weights w = 2 / ((1 − x²) P_n'(x)²).
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> x, w;
  x.reserve(n);
  w.reserve(n);
  for (double z : zeros) {
    const double dp = boost::math::legendre_p_prime(n, z);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    if (z == 0.0) {
      x.push_back(z);
      w.push_back(weight);
    } else {
      x.push_back(-z);
      w.push_back(weight);
      x.push_back(z);
      w.push_back(weight);
    }
  }

  QuadratureRule rule;
  rule.nodes.resize(x.size());
  rule.weights.resize(x.size());
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes[i] = mid + half * x[i];
    rule.weights[i] = half * w[i];
  }
  return rule;
}

QuadratureRule truncated_gaussian_rule(double center, double width, int n) {
  if (!(width > 0)) {
    throw std::invalid_argument("truncated_gaussian_rule: width must be > 0");
  }
  // Tiny positive floor keeps every node strictly inside k > 0.
  const double lo = std::max(1e-12, center - 6.0 * width);
  const double hi = center + 6.0 * width;
  if (!(hi > lo)) {
    throw std::invalid_argument(
        "truncated_gaussian_rule: distribution has no mass at k > 0");
  }

  QuadratureRule rule = gauss_legendre(n, lo, hi);
  double mass = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double d = (rule.nodes[i] - center) / width;
    rule.weights[i] *= std::exp(-0.5 * d * d);
    mass += rule.weights[i];
  }
  if (!(mass > 1e-12 * width)) {
    throw std::invalid_argument(
        "truncated_gaussian_rule: mass below numerical floor after k > 0 truncation");
  }
  for (double& w : rule.weights) w /= mass;
  return rule;
}

}  // namespace distill
