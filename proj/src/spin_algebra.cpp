#include "distill/spin_algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <array>

namespace distill {

namespace {

Eigen::Matrix2cd pauli_2x2(Axis axis) {
  Eigen::Matrix2cd s;
  const Complex i(0.0, 1.0);
  switch (axis) {
    case Axis::X: s << 0, 1, 1, 0; break;
    case Axis::Y: s << 0, -i, i, 0; break;
    case Axis::Z: s << 1, 0, 0, -1; break;
  }
  return s;
}

}  // namespace

SpinOperator pauli(Axis axis, Site site) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  std::array<Eigen::Matrix2cd, 3> factors = {id, id, id};
  factors[static_cast<int>(site)] = pauli_2x2(axis);
  return Eigen::kroneckerProduct(
             factors[0], Eigen::kroneckerProduct(factors[1], factors[2]).eval())
      .eval();
}

SpinOperator pauli_dot(Site s1, Site s2) {
  SpinOperator out = SpinOperator::Zero();
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) out += pauli(a, s1) * pauli(a, s2);
  return out;
}

Projectors build_projectors() {
  const SpinOperator id = SpinOperator::Identity();
  const SpinOperator dot_ab = pauli_dot(Site::A, Site::B);
  const SpinOperator dot_xa = pauli_dot(Site::X, Site::A);
  const SpinOperator dot_xb = pauli_dot(Site::X, Site::B);

  Projectors p;
  p.p_minus = (id - dot_ab) / 4.0;
  p.p_plus = (3.0 * id + dot_ab) / 4.0;
  p.q_three_half = (2.0 / 3.0) * p.p_plus + (dot_xa + dot_xb) / 6.0;
  p.q_one_half = p.p_minus + p.p_plus / 3.0 - (dot_xa + dot_xb) / 6.0;

  // Σ₊ = ½[(σ⁽ᴬ⁾ − σ⁽ᴮ⁾) + i σ⁽ᴬ⁾×σ⁽ᴮ⁾], K₊ = σ⁽ˣ⁾·Σ₊
  const Complex i(0.0, 1.0);
  auto sig = [](Axis a, Site s) { return pauli(a, s); };
  std::array<SpinOperator, 3> cross;
  cross[0] = sig(Axis::Y, Site::A) * sig(Axis::Z, Site::B) -
             sig(Axis::Z, Site::A) * sig(Axis::Y, Site::B);
  cross[1] = sig(Axis::Z, Site::A) * sig(Axis::X, Site::B) -
             sig(Axis::X, Site::A) * sig(Axis::Z, Site::B);
  cross[2] = sig(Axis::X, Site::A) * sig(Axis::Y, Site::B) -
             sig(Axis::Y, Site::A) * sig(Axis::X, Site::B);

  p.k_plus = SpinOperator::Zero();
  const std::array<Axis, 3> axes = {Axis::X, Axis::Y, Axis::Z};
  for (int a = 0; a < 3; ++a) {
    SpinOperator sigma_plus =
        0.5 * (sig(axes[a], Site::A) - sig(axes[a], Site::B) + i * cross[a]);
    p.k_plus += sig(axes[a], Site::X) * sigma_plus;
  }
  p.k_minus = p.k_plus.adjoint();
  return p;
}

const Projectors& projectors() {
  static const Projectors p = build_projectors();
  return p;
}

Eigen::Matrix4cd partial_trace_x(const SpinOperator& op) {
  return op.block<4, 4>(0, 0) + op.block<4, 4>(4, 4);
}

SpinOperator lift_ab(const Eigen::Matrix4cd& op) {
  return Eigen::kroneckerProduct(Eigen::Matrix2cd::Identity(), op).eval();
}

Eigen::Vector4cd singlet_vector() {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  v(1) = inv_sqrt2;   // |↑↓⟩
  v(2) = -inv_sqrt2;  // |↓↑⟩
  return v;
}

Eigen::Matrix4cd singlet_projector_ab() {
  const Eigen::Vector4cd v = singlet_vector();
  return v * v.adjoint();
}

Eigen::Matrix4cd triplet_projector_ab() {
  return Eigen::Matrix4cd::Identity() - singlet_projector_ab();
}

double singlet_fidelity(const AbState& rho) {
  return (singlet_vector().adjoint() * rho * singlet_vector())(0).real();
}

double density_matrix_defect(const Eigen::Ref<const Eigen::MatrixXcd>& rho) {
  double defect = (rho - rho.adjoint()).norm();
  defect = std::max(defect, std::abs(rho.trace() - Complex(1.0)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      ((rho + rho.adjoint()) / 2.0).eval());
  defect = std::max(defect, std::max(0.0, -es.eigenvalues().minCoeff()));
  return defect;
}

void require_density_matrix(const Eigen::Ref<const Eigen::MatrixXcd>& rho,
                            double tol, const char* what) {
  if (density_matrix_defect(rho) > tol) {
    throw std::invalid_argument(std::string(what) +
                                " is not a valid density matrix");
  }
}

}  // namespace distill
