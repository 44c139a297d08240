#include "distill/channels.hpp"

#include "distill/scattering.hpp"
#include "distill/spin_algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

namespace distill {

Eigen::Vector<Complex, 16> vectorize(const AbState& rho) {
  return Eigen::Map<const Eigen::Vector<Complex, 16>>(rho.data());
}

AbState unvectorize(const Eigen::Vector<Complex, 16>& v) {
  return Eigen::Map<const AbState>(v.data());
}

AbState Superoperator::apply(const AbState& rho) const {
  return unvectorize(matrix * vectorize(rho));
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  return {a.matrix * b.matrix, a.label + "∘" + b.label};
}

Superoperator operator+(const Superoperator& a, const Superoperator& b) {
  return {a.matrix + b.matrix, a.label + "+" + b.label};
}

Superoperator operator*(double scale, const Superoperator& s) {
  std::ostringstream label;
  label << scale << "·" << s.label;
  return {scale * s.matrix, label.str()};
}

Superoperator sandwich_superop(const Eigen::Matrix4cd& p, std::string label) {
  Superoperator s;
  s.matrix = Eigen::kroneckerProduct(p.conjugate(), p);
  s.label = std::move(label);
  return s;
}

XSpinState unpolarized_spin() { return XSpinState::Identity() / 2.0; }

namespace {

/// tr_X{op (ρ_X ⊗ ρ) op†} as a superoperator. With X the slowest index the
/// 4×4 blocks of op are ⟨s_out|op|s_in⟩; diagonalizing ρ_X = Σ_j w_j|χ_j⟩⟨χ_j|
/// gives Kraus operators √w_j Σ_in χ_j(in) op^{out,in}.
Superoperator traced_channel(const SpinOperator& op, const XSpinState& spin_x,
                             std::string label) {
  require_density_matrix(spin_x, 1e-9, "spin_x");
  Eigen::SelfAdjointEigenSolver<XSpinState> es(spin_x);

  Superoperator s;
  s.label = std::move(label);
  for (int j = 0; j < 2; ++j) {
    const double w = std::max(0.0, es.eigenvalues()(j));
    if (w == 0.0) continue;
    const Eigen::Vector2cd chi = es.eigenvectors().col(j);
    for (int out = 0; out < 2; ++out) {
      Eigen::Matrix4cd kraus = Eigen::Matrix4cd::Zero();
      for (int in = 0; in < 2; ++in) {
        kraus += chi(in) * op.block<4, 4>(4 * out, 4 * in);
      }
      kraus *= std::sqrt(w);
      s.matrix += Eigen::kroneckerProduct(kraus.conjugate(), kraus);
    }
  }
  return s;
}

std::string momentum_label(const char* name, double kappa) {
  std::ostringstream os;
  os << name << "(κ=" << kappa / pi << "π)";
  return os.str();
}

}  // namespace

Superoperator channel_T_at(double kappa, const PhysicalParams& params,
                           const XSpinState& spin_x) {
  return traced_channel(scatter_operators(kappa, params.coupling).transmission,
                        spin_x, momentum_label("T", kappa));
}

Superoperator channel_R_at(double kappa, const PhysicalParams& params,
                           const XSpinState& spin_x) {
  return traced_channel(scatter_operators(kappa, params.coupling).reflection,
                        spin_x, momentum_label("R", kappa));
}

Superoperator channel_S_at(double kappa, const PhysicalParams& params,
                           const XSpinState& spin_x) {
  Superoperator s = channel_T_at(kappa, params, spin_x) +
                    channel_R_at(kappa, params, spin_x);
  s.label = momentum_label("S", kappa);
  return s;
}

Superoperator channel_T(const PhysicalParams& params, const XSpinState& spin_x) {
  params.validate();
  return channel_T_at(params.kappa, params, spin_x);
}

Superoperator channel_R(const PhysicalParams& params, const XSpinState& spin_x) {
  params.validate();
  return channel_R_at(params.kappa, params, spin_x);
}

Superoperator channel_S(const PhysicalParams& params, const XSpinState& spin_x) {
  params.validate();
  return channel_S_at(params.kappa, params, spin_x);
}

bool chi_is_resonant(double chi) {
  return std::abs(chi / pi - std::round(chi / pi)) < 1e-6;
}

Superoperator protocol_map(const PhysicalParams& params) {
  return protocol_map(params, &std::cerr);
}

Superoperator protocol_map(const PhysicalParams& params, std::ostream* warn) {
  params.validate();
  if (warn != nullptr && chi_is_resonant(params.chi)) {
    *warn << "warning: chi = " << params.chi / pi
          << "π is (near-)resonant; the shake feeds no population into the "
             "singlet and the protocol map is not mixing\n";
  }
  Superoperator m = channel_T_at(params.kappa, params) +
                    channel_S_at(params.chi, params) *
                        channel_R_at(params.kappa, params);
  std::ostringstream label;
  label << "M(κ=" << params.kappa / pi << "π, χ=" << params.chi / pi
        << "π, G=" << params.coupling << ")";
  m.label = label.str();
  return m;
}

Superoperator detector_map(const PhysicalParams& params, DetectorVariant variant) {
  params.validate();
  const Superoperator m = protocol_map(params, nullptr);
  const Superoperator s_res = channel_S_at(params.kappa, params);
  Superoperator out;
  if (variant == DetectorVariant::I) {
    out = params.eta * m + (1.0 - params.eta) * s_res;
  } else {
    out = params.eta * m +
          (1.0 - params.eta) * (channel_S_at(params.chi, params) * s_res);
  }
  std::ostringstream label;
  label << "M_eta(" << (variant == DetectorVariant::I ? "I" : "II")
        << ", η=" << params.eta << ", κ=" << params.kappa / pi << "π)";
  out.label = label.str();
  return out;
}

MomentumDistribution MomentumDistribution::point(double kappa) {
  if (!(kappa > 0)) {
    throw std::invalid_argument("MomentumDistribution: point mass needs kappa > 0");
  }
  MomentumDistribution d;
  d.kind_ = Kind::Point;
  d.center_ = kappa;
  return d;
}

MomentumDistribution MomentumDistribution::gaussian(double center, double width) {
  if (width == 0.0) return point(center);
  MomentumDistribution d;
  d.kind_ = Kind::Gaussian;
  d.center_ = center;
  d.width_ = width;
  // Fail early when the k > 0 truncation removes (almost) all mass.
  truncated_gaussian_rule(center, width, 4);
  return d;
}

MomentumDistribution MomentumDistribution::discrete(std::vector<double> nodes,
                                                    std::vector<double> weights) {
  if (nodes.empty() || nodes.size() != weights.size()) {
    throw std::invalid_argument("MomentumDistribution: nodes/weights mismatch");
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] > 0)) {
      throw std::invalid_argument("MomentumDistribution: nodes must be > 0");
    }
    if (!(weights[i] >= 0)) {
      throw std::invalid_argument("MomentumDistribution: weights must be >= 0");
    }
    mass += weights[i];
  }
  if (!(mass > 1e-12)) {
    throw std::invalid_argument("MomentumDistribution: mass below numerical floor");
  }
  MomentumDistribution d;
  d.kind_ = Kind::Discrete;
  d.fixed_.nodes = std::move(nodes);
  d.fixed_.weights = std::move(weights);
  for (double& w : d.fixed_.weights) w /= mass;
  return d;
}

QuadratureRule MomentumDistribution::rule(int n) const {
  switch (kind_) {
    case Kind::Point: return {{center_}, {1.0}};
    case Kind::Gaussian: return truncated_gaussian_rule(center_, width_, n);
    case Kind::Discrete: return fixed_;
  }
  throw std::logic_error("MomentumDistribution: bad kind");
}

namespace {

SuperMatrix average_over_rules(const QuadratureRule& fk, const QuadratureRule& fq,
                               const PhysicalParams& params) {
  SuperMatrix acc = SuperMatrix::Zero();
  for (std::size_t i = 0; i < fk.nodes.size(); ++i) {
    for (std::size_t j = 0; j < fq.nodes.size(); ++j) {
      PhysicalParams p = params;
      p.kappa = fk.nodes[i];
      p.chi = fq.nodes[j];
      acc += (fk.weights[i] * fq.weights[j]) * protocol_map(p, nullptr).matrix;
    }
  }
  return acc;
}

}  // namespace

Superoperator averaged_map(const MomentumDistribution& momentum_k,
                           const MomentumDistribution& momentum_q,
                           const PhysicalParams& params) {
  params.validate();
  const bool refine = momentum_k.is_parametric() || momentum_q.is_parametric();

  int n = 201;
  SuperMatrix current =
      average_over_rules(momentum_k.rule(n), momentum_q.rule(n), params);
  if (refine) {
    // Double the node count until the map stops moving entrywise.
    for (int pass = 0; pass < 6; ++pass) {
      n *= 2;
      SuperMatrix finer =
          average_over_rules(momentum_k.rule(n), momentum_q.rule(n), params);
      const double change = (finer - current).cwiseAbs().maxCoeff();
      current = finer;
      if (change < 1e-11) break;
    }
  }

  Superoperator out;
  out.matrix = current;
  out.label = "averaged M";
  return out;
}

Superoperator averaged_map(const MomentumDistribution& momentum_k,
                           const PhysicalParams& params) {
  return averaged_map(momentum_k, MomentumDistribution::point(params.chi), params);
}

std::vector<Complex> superop_spectrum(const Superoperator& s) {
  Eigen::ComplexEigenSolver<SuperMatrix> es(s.matrix, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw NumericalError("superop_spectrum: eigensolver failed for " + s.label);
  }
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + 16);
  std::sort(ev.begin(), ev.end(),
            [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
  return ev;
}

double spectral_gap(const Superoperator& s) {
  return 1.0 - std::abs(superop_spectrum(s)[1]);
}

AbState fixed_point(const Superoperator& s) {
  Eigen::ComplexEigenSolver<SuperMatrix> es(s.matrix);
  if (es.info() != Eigen::Success) {
    throw NumericalError("fixed_point: eigensolver failed for " + s.label);
  }

  int top = 0, second = -1;
  for (int i = 1; i < 16; ++i) {
    const double m = std::abs(es.eigenvalues()(i));
    if (m > std::abs(es.eigenvalues()(top))) {
      second = top;
      top = i;
    } else if (second < 0 || m > std::abs(es.eigenvalues()(second))) {
      second = i;
    }
  }
  if (std::abs(es.eigenvalues()(second)) >= 1.0 - 1e-9) {
    throw NotMixingError("fixed_point: " + s.label +
                         " is not mixing (eigenvalue 1 is degenerate)");
  }

  // Dividing by the (nonzero) trace fixes the eigenvector's scale and phase.
  AbState rho = unvectorize(es.eigenvectors().col(top));
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-12) {
    throw NumericalError("fixed_point: traceless candidate for " + s.label);
  }
  rho /= tr;
  const double herm_defect = (rho - rho.adjoint()).norm();
  rho = ((rho + rho.adjoint()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<AbState> pos(rho);
  const double min_eig = pos.eigenvalues().minCoeff();
  if (herm_defect > 1e-8 || min_eig < -1e-8) {
    std::ostringstream msg;
    msg << "fixed_point: candidate for " << s.label
        << " is not a state (hermiticity defect " << herm_defect
        << ", min eigenvalue " << min_eig << ")";
    throw NumericalError(msg.str());
  }

  const double residual = (s.apply(rho) - rho).norm();
  if (residual > 1e-10) {
    std::ostringstream msg;
    msg << "fixed_point: residual " << residual << " for " << s.label;
    throw NumericalError(msg.str());
  }
  return rho;
}

std::vector<AbState> iterate(const Superoperator& s, const AbState& rho0, int cycles) {
  if (cycles < 0) throw std::invalid_argument("iterate: cycles must be >= 0");
  std::vector<AbState> out;
  out.reserve(cycles + 1);
  out.push_back(rho0);
  for (int i = 0; i < cycles; ++i) out.push_back(s.apply(out.back()));
  return out;
}

double average_fidelity(const Superoperator& s, int cycles) {
  if (cycles < 0) throw std::invalid_argument("average_fidelity: cycles must be >= 0");
  AbState rho = AbState::Identity() / 4.0;
  for (int i = 0; i < cycles; ++i) rho = s.apply(rho);
  return singlet_fidelity(rho);
}

Eigen::Matrix<Complex, 16, 16> choi_matrix(const Superoperator& s) {
  // C = Σ_{ij} |i⟩⟨j| ⊗ s(|i⟩⟨j|)
  Eigen::Matrix<Complex, 16, 16> c;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      AbState e = AbState::Zero();
      e(i, j) = 1.0;
      c.block<4, 4>(4 * i, 4 * j) = s.apply(e);
    }
  }
  return c;
}

CptReport certify_cpt(const Superoperator& s) {
  CptReport report;

  const Eigen::Vector<Complex, 16> id_vec = vectorize(AbState::Identity());
  report.trace_defect = (s.matrix.adjoint() * id_vec - id_vec).norm();

  // Hermiticity preservation probed on the matrix-unit basis: the defects
  // of s(E_ij)† − s(E_ji) span the general case by linearity.
  double herm = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      AbState e = AbState::Zero();
      e(i, j) = 1.0;
      AbState et = AbState::Zero();
      et(j, i) = 1.0;
      herm = std::max(herm, (s.apply(e).adjoint() - s.apply(et)).norm());
    }
  }
  report.hermiticity_defect = herm;

  const auto choi = choi_matrix(s);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, 16, 16>> es(
      ((choi + choi.adjoint()) / 2.0).eval());
  report.choi_min_eigenvalue = es.eigenvalues().minCoeff();
  return report;
}

}  // namespace distill
