#include "distill/scattering.hpp"

#include "distill/spin_algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace distill {

ScatterCoefficients scatter_coefficients(double kappa, double coupling) {
  if (!(kappa > 0)) {
    throw std::invalid_argument(
        "scatter_coefficients: ancillas are injected from the left, kappa must be > 0");
  }
  const Complex i(0.0, 1.0);
  const double om = coupling / kappa;
  const Complex u = 1.0 - std::polar(1.0, 2.0 * kappa);  // 1 − e^{2iκ}
  const double om2 = om * om;

  ScatterCoefficients c;
  c.omega = om;
  c.alpha = 1.0 / ((1.0 - 4.0 * i * om) + 2.0 * om2 * (1.0 - 6.0 * i * om) * u +
                   9.0 * om2 * om2 * u * u);
  c.beta = 1.0 / ((1.0 + 2.0 * i * om) - om2 * u);
  return c;
}

ScatterPair scatter_operators(double kappa, double coupling) {
  const auto [om, alpha, beta] = scatter_coefficients(kappa, coupling);
  const Complex i(0.0, 1.0);
  const Complex eik = std::polar(1.0, kappa);
  const Complex u = 1.0 - std::polar(1.0, 2.0 * kappa);
  const double om2 = om * om;

  const Projectors& p = projectors();
  const SpinOperator id = SpinOperator::Identity();

  ScatterPair out;
  out.kappa = kappa;
  out.transmission =
      eik * (alpha * (1.0 - 4.0 * i * om) * p.p_minus +
             (alpha * p.q_one_half + beta * p.q_three_half) * p.p_plus -
             alpha * om2 * u *
                 (p.p_minus - 3.0 * p.q_one_half * p.p_plus - p.k_plus + p.k_minus));
  out.reflection =
      out.transmission / eik - id -
      i * om * u *
          (6.0 * alpha * om2 * u * p.p_minus +
           (2.0 * alpha * p.q_one_half - beta * p.q_three_half) * p.p_plus +
           0.5 * alpha * ((1.0 + 3.0 * om2 * u) * id - 4.0 * i * om * p.p_plus) *
               (p.k_plus + p.k_minus));
  return out;
}

ScatterPair scatter_operators(const PhysicalParams& params) {
  params.validate();
  return scatter_operators(params.kappa, params.coupling);
}

ScatterPair resonant_operators(int n, double coupling) {
  if (n < 1) throw std::invalid_argument("resonant_operators: n must be >= 1");
  if (coupling == 0.0) {
    throw std::invalid_argument("resonant_operators: coupling must be nonzero");
  }
  const Complex i(0.0, 1.0);
  const double om = coupling / (n * pi);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const Complex half = 1.0 / (1.0 - 4.0 * i * om);   // spin-1/2 amplitude
  const Complex three = 1.0 / (1.0 + 2.0 * i * om);  // spin-3/2 amplitude

  const Projectors& p = projectors();
  ScatterPair out;
  out.kappa = n * pi;
  out.transmission =
      sign * (p.p_minus + (half * p.q_one_half + three * p.q_three_half) * p.p_plus);
  out.reflection = (4.0 * i * om * half * p.q_one_half -
                    2.0 * i * om * three * p.q_three_half) *
                   p.p_plus;
  return out;
}

double transmission_probability(const PhysicalParams& params,
                                const XSpinState& spin_x, const AbState& rho_ab) {
  params.validate();
  require_density_matrix(spin_x, 1e-9, "spin_x");
  require_density_matrix(rho_ab, 1e-9, "rho_ab");

  const SpinOperator t = scatter_operators(params.kappa, params.coupling).transmission;
  const SpinOperator rho = Eigen::kroneckerProduct(spin_x, rho_ab);
  return (t * rho * t.adjoint()).trace().real();
}

}  // namespace distill
