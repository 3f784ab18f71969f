#include "jtberry/holonomy.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace jtberry {

namespace {

struct PointFrame {
  Vector eigenvalues;
  Matrix eigenvectors;
};

PointFrame frame_at(const HamiltonianFn& h, const Geometry& Q) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h(Q));
  return {es.eigenvalues(), es.eigenvectors()};
}

// Polar factor of A (closest orthogonal matrix); fails when A is too far
// from orthogonal for the step to be trusted.
Matrix polar_factor(const Matrix& A) {
  Eigen::JacobiSVD<Matrix> svd(A,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues().minCoeff() < 0.5)
    throw ResolutionError(
        "excited-frame step overlap is ill-conditioned; increase steps");
  return svd.matrixU() * svd.matrixV().transpose();
}

void check_closed(const LoopPath& path) {
  if (path.points.size() < 2)
    throw InvalidParameterError("loop needs at least two points");
  if ((path.points.front() - path.points.back()).norm() > 1e-12)
    throw InvalidParameterError("loop is not closed");
}

}  // namespace

LoopPath make_loop(const TroughSpec& spec, LoopKind kind,
                   const Vector& base_theta, int steps) {
  const JTModel& m = spec.model;
  if (steps < kMinLoopSteps)
    throw ResolutionError("need at least 64 loop steps");
  if (base_theta.size() != m.N - 1)
    throw InvalidParameterError("expected N-1 base angles");
  if (kind == LoopKind::custom)
    throw InvalidParameterError("custom loops are built directly from points");

  LoopPath path;
  path.kind = kind;
  path.thetas.reserve(steps + 1);
  const double two_pi = 2 * std::numbers::pi;
  const Vector end = antipode(spec, base_theta);
  for (int s = 0; s <= steps; ++s) {
    double t = static_cast<double>(s) / steps;
    Vector th;
    if (kind == LoopKind::nontrivial) {
      th = base_theta + t * (end - base_theta);
    } else if (m.N == 2) {
      // Out-and-back sweep; the 1-D chart has no genuine small circles.
      th = base_theta;
      th[0] += kContractibleRadius * std::sin(two_pi * t);
    } else {
      const double r = kContractibleRadius;
      th = base_theta;
      th[0] += r * std::cos(two_pi * t);
      th[m.N - 2] += r * std::sin(two_pi * t);
    }
    path.thetas.push_back(th);
    path.points.push_back(trough_point(spec, th).Q);
  }
  if ((path.points.front() - path.points.back()).norm() > 1e-10)
    throw ResolutionError("loop endpoints failed to close");
  path.points.back() = path.points.front();
  path.base = path.points.front();
  return path;
}

LoopPath concatenate(const LoopPath& a, const LoopPath& b) {
  check_closed(a);
  check_closed(b);
  if ((a.base - b.base).norm() > 1e-10)
    throw InvalidParameterError("loops must share a base point");
  LoopPath out = a;
  out.kind = LoopKind::custom;
  out.points.insert(out.points.end(), b.points.begin() + 1, b.points.end());
  out.thetas.insert(out.thetas.end(), b.thetas.begin() + 1, b.thetas.end());
  return out;
}

TransportRecord transport_ground_fn(const HamiltonianFn& h, int N,
                                    const LoopPath& path) {
  check_closed(path);
  PointFrame base = frame_at(h, path.points.front());
  double range = base.eigenvalues[N - 1] - base.eigenvalues[0];
  double gap_floor = kGapFloorRel * range;

  TransportRecord rec;
  rec.min_gap = std::numeric_limits<double>::infinity();
  Vector v = base.eigenvectors.col(0);
  rec.transported.push_back(v);
  for (std::size_t s = 1; s < path.points.size(); ++s) {
    PointFrame f = frame_at(h, path.points[s]);
    double gap = f.eigenvalues[1] - f.eigenvalues[0];
    rec.min_gap = std::min(rec.min_gap, gap);
    if (gap <= gap_floor)
      throw DegeneracyOnPathError(
          "adiabatic gap collapsed along the loop (gap " +
          std::to_string(gap) + ")");
    Vector w = f.eigenvectors.col(0);
    double o = v.dot(w);
    if (o < 0) {
      w = -w;
      o = -o;
    }
    if (o < kOverlapFloor)
      throw ResolutionError("step overlap " + std::to_string(o) +
                            " below floor; increase steps");
    rec.step_overlaps.push_back(o);
    v = w;
    rec.transported.push_back(v);
  }
  rec.C_end = v;
  return rec;
}

TransportRecord transport_ground(const JTModel& model, const LoopPath& path) {
  return transport_ground_fn(
      [&model](const Geometry& Q) { return hamiltonian(model, Q); }, model.N,
      path);
}

double berry_phase_raw(const JTModel& model, const LoopPath& path) {
  TransportRecord rec = transport_ground(model, path);
  return rec.transported.front().dot(rec.C_end);
}

int berry_phase(const JTModel& model, const LoopPath& path) {
  double raw = berry_phase_raw(model, path);
  if (std::abs(std::abs(raw) - 1.0) > kSnapTol)
    throw ResolutionError("raw phase " + std::to_string(raw) +
                          " is not within snap tolerance of +-1");
  return raw > 0 ? 1 : -1;
}

HolonomyResult subspace_holonomy_fn(const HamiltonianFn& h, int N,
                                    const LoopPath& path) {
  check_closed(path);
  TransportRecord ground = transport_ground_fn(h, N, path);

  Matrix E0 = frame_at(h, path.points.front()).eigenvectors.rightCols(N - 1);
  Matrix T = E0;  // transported excited frame
  Matrix W = Matrix::Identity(N - 1, N - 1);
  for (std::size_t s = 1; s < path.points.size(); ++s) {
    Matrix E = frame_at(h, path.points[s]).eigenvectors.rightCols(N - 1);
    Matrix P = polar_factor(E.transpose() * T);
    T = E * P;
  }
  W = E0.transpose() * T;

  HolonomyResult res;
  res.gamma0_raw = ground.transported.front().dot(ground.C_end);
  if (std::abs(std::abs(res.gamma0_raw) - 1.0) > kSnapTol)
    throw ResolutionError("raw phase not within snap tolerance of +-1");
  res.gamma0 = res.gamma0_raw > 0 ? 1 : -1;
  res.W = W;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (W + W.transpose()));
  res.flipped_count =
      static_cast<int>((es.eigenvalues().array() < -1.0 + 1e-3).count());
  res.min_step_overlap = ground.step_overlaps.empty()
                             ? 1.0
                             : *std::min_element(ground.step_overlaps.begin(),
                                                 ground.step_overlaps.end());
  res.min_gap = ground.min_gap;
  res.steps = static_cast<int>(path.points.size()) - 1;
  return res;
}

HolonomyResult subspace_holonomy(const JTModel& model, const LoopPath& path) {
  return subspace_holonomy_fn(
      [&model](const Geometry& Q) { return hamiltonian(model, Q); }, model.N,
      path);
}

Matrix projector(const JTModel& model, const Geometry& Q) {
  AdiabaticFrame f = eigensystem(model, Q);
  if (f.clusters.front().size() > 1)
    throw DegeneracyError("ground state is degenerate at this geometry");
  Vector v = f.eigenvectors.col(0);
  return v * v.transpose();
}

}  // namespace jtberry
