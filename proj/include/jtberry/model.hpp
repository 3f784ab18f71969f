#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "jtberry/errors.hpp"

namespace jtberry {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Nuclear displacement from the JT center, length M.
using Geometry = Vector;

/// Linear JT model with maximal continuous symmetry.
///
/// The electronic Hamiltonian is H_JT(Q) = F * sum_k Q_k V_k with M real
/// symmetric traceless coupling matrices V_k acting on the N-dimensional
/// diabatic electronic space.  The V_k are pairwise trace-orthogonal,
/// Tr(V_j V_k) = c * delta_jk, and V_M is diagonal with the two-value
/// pattern (x, ..., x, -(N-1)x).
struct JTModel {
  std::string name;
  int N = 0;  // electronic dimension
  int M = 0;  // vibrational dimension, N <= M
  double F = 1.0;
  double omega = 1.0;
  std::vector<Matrix> V;
  double c = 0.0;  // Tr(V_j V_k) = c delta_jk
};

/// Eigensystem of H_JT at a geometry, with a deterministic sign gauge.
struct AdiabaticFrame {
  Geometry Q;
  Vector eigenvalues;           // ascending
  Matrix eigenvectors;          // orthonormal columns, gauge-fixed
  std::vector<std::vector<int>> clusters;  // degeneracy groups, ascending
};

inline constexpr double kDefaultClusterTol = 1e-8;

/// Builds one of the built-in models: "e_x_e" (N=2, M=2) or "t_e_t2"
/// (N=3, M=5, SO(3)-invariant cubic model).
JTModel build_model(const std::string& name, double F, double omega);

/// Registers a custom model (extension hook for e.g. icosahedral couplings).
/// The matrices must satisfy the JTModel invariants; they are verified.
JTModel make_custom_model(const std::string& name, int N,
                          const std::vector<Matrix>& V, double F,
                          double omega);

/// H_JT(Q) = F * sum_k Q_k V_k.
Matrix hamiltonian(const JTModel& model, const Geometry& Q);

/// Sorted, gauge-fixed eigensystem of H_JT(Q) with degeneracy clustering.
AdiabaticFrame eigensystem(const JTModel& model, const Geometry& Q,
                           double cluster_tol = kDefaultClusterTol);

/// Adiabatic potential energy surfaces: omega^2 |Q|^2 / 2 + eigenvalues.
Vector apes(const JTModel& model, const Geometry& Q);

/// Induced configuration-space rotation of an electronic SO(N) element:
/// R_jk = Tr(V_j U V_k U^-1) / c.  With the convention used here,
/// sum_i (R Q')_i V_i = U (sum_i Q'_i V_i) U^-1 for every Q'.
Matrix induced_configuration_rotation(const JTModel& model, const Matrix& U);

}  // namespace jtberry
