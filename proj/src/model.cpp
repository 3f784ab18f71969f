#include "jtberry/model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace jtberry {

namespace {

void verify_couplings(const JTModel& m) {
  if (m.N < 2) throw InvalidParameterError("electronic dimension must be >= 2");
  if (m.M < m.N) throw InvalidParameterError("need M >= N coupling matrices");
  if (static_cast<int>(m.V.size()) != m.M)
    throw InvalidParameterError("coupling matrix count must equal M");
  double c = m.V[0].squaredNorm();
  for (int j = 0; j < m.M; ++j) {
    const Matrix& Vj = m.V[j];
    if (Vj.rows() != m.N || Vj.cols() != m.N)
      throw InvalidParameterError("coupling matrix has wrong shape");
    if ((Vj - Vj.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw InvalidParameterError("coupling matrix not symmetric");
    if (std::abs(Vj.trace()) > 1e-12)
      throw InvalidParameterError("coupling matrix not traceless");
    for (int k = 0; k <= j; ++k) {
      double t = (Vj * m.V[k]).trace();
      double want = (j == k) ? c : 0.0;
      if (std::abs(t - want) > 1e-10)
        throw InvalidParameterError("coupling matrices not trace-orthogonal");
    }
  }
  // V_M anchors the trough spectrum pattern: diagonal, (x,...,x,-(N-1)x).
  const Matrix& VM = m.V[m.M - 1];
  for (int i = 0; i < m.N; ++i)
    for (int j = 0; j < m.N; ++j)
      if (i != j && std::abs(VM(i, j)) > 1e-12)
        throw InvalidParameterError("last coupling matrix must be diagonal");
  double x = VM(0, 0);
  for (int i = 0; i < m.N - 1; ++i)
    if (std::abs(VM(i, i) - x) > 1e-12)
      throw InvalidParameterError("last coupling matrix has wrong pattern");
  if (std::abs(VM(m.N - 1, m.N - 1) + (m.N - 1) * x) > 1e-12)
    throw InvalidParameterError("last coupling matrix has wrong pattern");
}

Matrix offdiag3(int i, int j) {
  Matrix m = Matrix::Zero(3, 3);
  m(i, j) = m(j, i) = 1.0;
  return m;
}

}  // namespace

JTModel build_model(const std::string& name, double F, double omega) {
  if (omega <= 0.0) throw InvalidParameterError("omega must be positive");
  if (F < 0.0) throw InvalidParameterError("F must be non-negative");
  JTModel m;
  m.name = name;
  m.F = F;
  m.omega = omega;
  if (name == "e_x_e") {
    m.N = 2;
    m.M = 2;
    Matrix sx(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sz << 1, 0, 0, -1;
    m.V = {sx, sz};
  } else if (name == "t_e_t2") {
    m.N = 3;
    m.M = 5;
    // Real symmetric traceless quadrupole basis, Tr(V_j V_k) = 2 delta_jk,
    // with the diagonal (1,1,-2)/sqrt(3) element last.
    Matrix d1 = Matrix::Zero(3, 3), d2 = Matrix::Zero(3, 3);
    d1.diagonal() << 1, -1, 0;
    d2.diagonal() << 1, 1, -2;
    d2 /= std::sqrt(3.0);
    m.V = {offdiag3(0, 1), offdiag3(0, 2), offdiag3(1, 2), d1, d2};
  } else {
    throw ModelNotFoundError("unknown model '" + name + "'");
  }
  m.c = m.V[0].squaredNorm();
  verify_couplings(m);
  return m;
}

JTModel make_custom_model(const std::string& name, int N,
                          const std::vector<Matrix>& V, double F,
                          double omega) {
  if (omega <= 0.0) throw InvalidParameterError("omega must be positive");
  if (F < 0.0) throw InvalidParameterError("F must be non-negative");
  JTModel m;
  m.name = name;
  m.N = N;
  m.M = static_cast<int>(V.size());
  m.F = F;
  m.omega = omega;
  m.V = V;
  m.c = V.empty() ? 0.0 : V[0].squaredNorm();
  verify_couplings(m);
  return m;
}

Matrix hamiltonian(const JTModel& model, const Geometry& Q) {
  if (Q.size() != model.M)
    throw InvalidGeometryError("geometry has wrong dimension");
  Matrix H = Matrix::Zero(model.N, model.N);
  for (int k = 0; k < model.M; ++k) H += Q[k] * model.V[k];
  return model.F * H;
}

AdiabaticFrame eigensystem(const JTModel& model, const Geometry& Q,
                           double cluster_tol) {
  if (cluster_tol <= 0.0)
    throw InvalidParameterError("cluster_tol must be positive");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(model, Q));
  AdiabaticFrame f;
  f.Q = Q;
  f.eigenvalues = es.eigenvalues();
  f.eigenvectors = es.eigenvectors();
  // Sign gauge: largest-magnitude entry positive, ties to the lowest index.
  for (int j = 0; j < model.N; ++j) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < model.N; ++i) {
      double a = std::abs(f.eigenvectors(i, j));
      if (a > best + 1e-15) {
        best = a;
        imax = i;
      }
    }
    if (f.eigenvectors(imax, j) < 0.0) f.eigenvectors.col(j) *= -1.0;
  }
  double range = f.eigenvalues[model.N - 1] - f.eigenvalues[0];
  double gap_tol = cluster_tol * std::max(1.0, range);
  std::vector<int> cur{0};
  for (int i = 1; i < model.N; ++i) {
    if (f.eigenvalues[i] - f.eigenvalues[i - 1] < gap_tol) {
      cur.push_back(i);
    } else {
      f.clusters.push_back(cur);
      cur = {i};
    }
  }
  f.clusters.push_back(cur);
  return f;
}

Vector apes(const JTModel& model, const Geometry& Q) {
  if (Q.size() != model.M)
    throw InvalidGeometryError("geometry has wrong dimension");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(model, Q));
  double harm = 0.5 * model.omega * model.omega * Q.squaredNorm();
  return es.eigenvalues().array() + harm;
}

Matrix induced_configuration_rotation(const JTModel& model, const Matrix& U) {
  if (U.rows() != model.N || U.cols() != model.N)
    throw InvalidRotationError("rotation has wrong shape");
  if ((U.transpose() * U - Matrix::Identity(model.N, model.N))
          .cwiseAbs()
          .maxCoeff() > 1e-10)
    throw InvalidRotationError("matrix is not orthogonal");
  if (U.determinant() < 0.0)
    throw InvalidRotationError("rotation must have determinant +1");
  Matrix R(model.M, model.M);
  for (int k = 0; k < model.M; ++k) {
    Matrix W = U * model.V[k] * U.transpose();
    for (int j = 0; j < model.M; ++j)
      R(j, k) = (model.V[j] * W).trace() / model.c;
  }
  if ((R.transpose() * R - Matrix::Identity(model.M, model.M))
          .cwiseAbs()
          .maxCoeff() > 1e-9)
    throw InvalidRotationError(
        "induced rotation is not orthogonal; U does not act within the "
        "coupling space");
  return R;
}

}  // namespace jtberry
