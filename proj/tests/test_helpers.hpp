#pragma once

#include "distill/rng.hpp"
#include "distill/spin_algebra.hpp"
#include "distill/types.hpp"

namespace distill::test {

inline Eigen::MatrixXcd random_complex(SplitMix64& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    }
  }
  return m;
}

/// Random full-rank density matrix (Ginibre construction).
inline AbState random_state(SplitMix64& rng) {
  const Eigen::Matrix4cd a = random_complex(rng, 4, 4);
  Eigen::Matrix4cd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline Eigen::Vector4cd random_vector4(SplitMix64& rng) {
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) {
    v(i) = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  }
  return v.normalized();
}

/// Random pure state supported on the AB triplet sector.
inline AbState random_triplet_state(SplitMix64& rng) {
  const Eigen::Vector4cd v =
      (triplet_projector_ab() * random_vector4(rng)).normalized();
  return v * v.adjoint();
}

inline double trace_distance(const AbState& a, const AbState& b) {
  Eigen::SelfAdjointEigenSolver<AbState> es(((a - b + (a - b).adjoint()) / 2.0).eval());
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace distill::test
