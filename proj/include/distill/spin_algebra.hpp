#pragma once

#include "distill/types.hpp"

namespace distill {

enum class Axis { X, Y, Z };
enum class Site { X, A, B };

/// Pauli operator on one site, tensored with identities on the others.
SpinOperator pauli(Axis axis, Site site);

/// Heisenberg coupling σ⁽ˢ¹⁾·σ⁽ˢ²⁾ between two sites.
SpinOperator pauli_dot(Site s1, Site s2);

/// The fixed operator algebra of the scattering problem: projectors onto
/// the AB singlet/triplet sectors (lifted with identity on X), onto the
/// total-spin-3/2 and 1/2 sectors of XAB, and the singlet↔triplet
/// transition operators.
struct Projectors {
  SpinOperator p_minus;        // singlet projector of AB
  SpinOperator p_plus;         // triplet projector of AB
  SpinOperator q_three_half;   // spin-3/2 sector of XAB
  SpinOperator q_one_half;     // spin-1/2 sector of XAB
  SpinOperator k_plus;         // triplet←singlet transition
  SpinOperator k_minus;        // singlet←triplet transition (= k_plus†)
};

const Projectors& projectors();
Projectors build_projectors();

/// Contracts the X index pair of an 8×8 operator; trace preserving.
Eigen::Matrix4cd partial_trace_x(const SpinOperator& op);

/// Lifts a 4×4 AB operator to the full space: 1_X ⊗ op.
SpinOperator lift_ab(const Eigen::Matrix4cd& op);

/// |Ψ⁻⟩ = (|↑↓⟩ − |↓↑⟩)/√2 as a vector on AB.
Eigen::Vector4cd singlet_vector();

/// |Ψ⁻⟩⟨Ψ⁻|; on AB this is the entire singlet sector.
Eigen::Matrix4cd singlet_projector_ab();

/// 1 − |Ψ⁻⟩⟨Ψ⁻|, the three-dimensional triplet sector of AB.
Eigen::Matrix4cd triplet_projector_ab();

/// Overlap ⟨Ψ⁻|ρ|Ψ⁻⟩ of a state with the target singlet.
double singlet_fidelity(const AbState& rho);

/// Checks Hermiticity, unit trace and positivity of a density matrix.
/// Returns the worst defect; a valid state has defect ≤ tolerance.
double density_matrix_defect(const Eigen::Ref<const Eigen::MatrixXcd>& rho);

/// Throws std::invalid_argument if rho is not a density matrix within tol.
void require_density_matrix(const Eigen::Ref<const Eigen::MatrixXcd>& rho,
                            double tol = 1e-9, const char* what = "state");

}  // namespace distill
