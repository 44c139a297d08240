#include "distill/sector_model.hpp"

#include "distill/quadrature.hpp"
#include "distill/scattering.hpp"

#include <cmath>
#include <sstream>

namespace distill {

namespace {

double sq(double x) { return x * x; }
double sq(Complex z) { return std::norm(z); }

std::string sector_label(const char* name, double kappa) {
  std::ostringstream os;
  os << name << "(κ=" << kappa / pi << "π)";
  return os.str();
}

}  // namespace

double w_coefficient(double chi, double coupling) {
  const auto [om, alpha, beta] = scatter_coefficients(chi, coupling);
  const Complex i(0.0, 1.0);
  const Complex u = 1.0 - std::polar(1.0, 2.0 * chi);
  return std::norm(alpha) * sq(om) * std::norm(u) *
         (4.0 * sq(om) + sq(1.0 - 2.0 * i * om + 3.0 * sq(om) * u));
}

double v_coefficient(int n, double coupling) {
  if (n < 1) throw std::invalid_argument("v_coefficient: n must be >= 1");
  const double om2 = sq(coupling / (n * pi));
  return 8.0 * om2 * (1.0 + 8.0 * om2) /
         ((1.0 + 16.0 * om2) * (1.0 + 4.0 * om2));
}

SectorMatrix sector_T(double kappa, double coupling) {
  const auto [om, alpha, beta] = scatter_coefficients(kappa, coupling);
  const Complex i(0.0, 1.0);
  const Complex u = 1.0 - std::polar(1.0, 2.0 * kappa);
  const double om2 = sq(om);

  SectorMatrix m;
  m.label = sector_label("T", kappa);
  const double t_mm = std::norm(alpha) * sq(1.0 - 4.0 * i * om - om2 * u);
  const double t_mp = 4.0 * std::norm(alpha) * sq(om2) * std::norm(u);
  const double t_pp = (sq((alpha + 2.0 * beta) + 3.0 * alpha * om2 * u) +
                       2.0 * sq((alpha - beta) + 3.0 * alpha * om2 * u)) /
                      9.0;
  m.entries << t_mm, t_mp, 3.0 * t_mp, t_pp;
  return m;
}

SectorMatrix sector_R(double kappa, double coupling) {
  const auto [om, alpha, beta] = scatter_coefficients(kappa, coupling);
  const Complex i(0.0, 1.0);
  const Complex u = 1.0 - std::polar(1.0, 2.0 * kappa);
  const double om2 = sq(om);

  SectorMatrix m;
  m.label = sector_label("R", kappa);
  const double r_mm =
      sq(1.0 - alpha * (1.0 - 4.0 * i * om) + alpha * om2 * u +
         6.0 * i * alpha * om * om2 * u * u);
  const double r_mp = std::norm(alpha) * om2 * std::norm(u) *
                      sq(1.0 - 2.0 * i * om + 3.0 * om2 * u);
  const double r_pp =
      (sq(3.0 - (alpha + 2.0 * beta) +
          i * om * (2.0 * (alpha - beta) + 3.0 * i * alpha * om) * u) +
       2.0 * sq((alpha - beta) -
                i * om * ((2.0 * alpha + beta) + 3.0 * i * alpha * om) * u)) /
      9.0;
  m.entries << r_mm, r_mp, 3.0 * r_mp, r_pp;
  return m;
}

SectorMatrix sector_S(double chi, double coupling) {
  SectorMatrix m;
  m.label = sector_label("S", chi);
  m.entries = sector_T(chi, coupling).entries + sector_R(chi, coupling).entries;
  return m;
}

SectorMatrix sector_protocol(double kappa, double chi, double coupling) {
  SectorMatrix m;
  std::ostringstream os;
  os << "M(κ=" << kappa / pi << "π, χ=" << chi / pi << "π)";
  m.label = os.str();
  m.entries = sector_T(kappa, coupling).entries +
              sector_S(chi, coupling).entries * sector_R(kappa, coupling).entries;
  return m;
}

SectorMatrix sector_ideal(int n, double chi, double coupling) {
  const double wv = w_coefficient(chi, coupling) * v_coefficient(n, coupling);
  SectorMatrix m;
  std::ostringstream os;
  os << "M(n=" << n << ", χ=" << chi / pi << "π)";
  m.label = os.str();
  m.entries << 1.0, wv, 0.0, 1.0 - wv;
  return m;
}

double fixed_fidelity(const SectorMatrix& m) {
  const double gain = m.entries(0, 1);           // triplet → singlet inflow
  const double denom = 1.0 - m.entries(0, 0) + gain;
  if (!(denom > 0)) {
    throw NumericalError(
        "fixed_fidelity: fidelity formula inapplicable (degenerate population "
        "dynamics) for " + m.label);
  }
  return gain / denom;
}

SectorMatrix detector_sector(int n, double chi, double coupling, double eta,
                             DetectorCase variant) {
  if (!(eta >= 0 && eta <= 1)) {
    throw std::invalid_argument("detector_sector: eta must be in [0, 1]");
  }
  const double w = w_coefficient(chi, coupling);
  const double v = v_coefficient(n, coupling);

  SectorMatrix m;
  std::ostringstream os;
  os << "M_eta(" << (variant == DetectorCase::I ? "I" : "II") << ", η=" << eta
     << ", n=" << n << ")";
  m.label = os.str();
  if (variant == DetectorCase::I) {
    m.entries << 1.0, eta * w * v, 0.0, 1.0 - eta * w * v;
  } else {
    const double gain = (1.0 - eta + eta * v) * w;
    m.entries << 1.0 - 3.0 * (1.0 - eta) * w, gain, 3.0 * (1.0 - eta) * w,
        1.0 - gain;
  }
  return m;
}

namespace {

Eigen::Matrix2d averaged_entries(int n, double delta_kappa, double chi,
                                 double coupling, int nodes) {
  const QuadratureRule rule = truncated_gaussian_rule(n * pi, delta_kappa, nodes);
  Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * sector_protocol(rule.nodes[i], chi, coupling).entries;
  }
  return acc;
}

}  // namespace

AveragedSector averaged_sector(int n, double delta_kappa, double chi,
                               double coupling) {
  if (delta_kappa < 0) {
    throw std::invalid_argument("averaged_sector: delta_kappa must be >= 0");
  }

  AveragedSector out;
  std::ostringstream os;
  os << "averaged M(n=" << n << ", Δκ=" << delta_kappa / pi << "π)";
  out.matrix.label = os.str();

  if (delta_kappa == 0.0) {
    out.matrix.entries = sector_protocol(n * pi, chi, coupling).entries;
  } else {
    int nodes = 201;
    Eigen::Matrix2d current = averaged_entries(n, delta_kappa, chi, coupling, nodes);
    for (int pass = 0; pass < 6; ++pass) {
      nodes *= 2;
      const Eigen::Matrix2d finer =
          averaged_entries(n, delta_kappa, chi, coupling, nodes);
      const double change = (finer - current).cwiseAbs().maxCoeff();
      current = finer;
      if (change < 1e-11) break;
    }
    out.matrix.entries = current;
  }
  out.fidelity = fixed_fidelity(out.matrix);
  return out;
}

double closed_form_curve(int n, double chi, double coupling, double f0, int cycles) {
  if (!(f0 >= 0 && f0 <= 1)) {
    throw std::invalid_argument("closed_form_curve: f0 must be in [0, 1]");
  }
  if (cycles < 0) throw std::invalid_argument("closed_form_curve: cycles must be >= 0");
  const double wv = w_coefficient(chi, coupling) * v_coefficient(n, coupling);
  return 1.0 - (1.0 - f0) * std::pow(1.0 - wv, cycles);
}

}  // namespace distill
