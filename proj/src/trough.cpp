#include "jtberry/trough.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

namespace jtberry {

namespace {

// Rotation in the (a,b) coordinate plane: e_a -> cos(t) e_a + sin(t) e_b,
// e_b -> -sin(t) e_a + cos(t) e_b.
Matrix plane_rotation(int n, int a, int b, double t) {
  Matrix G = Matrix::Identity(n, n);
  G(a, a) = std::cos(t);
  G(b, b) = std::cos(t);
  G(b, a) = std::sin(t);
  G(a, b) = -std::sin(t);
  return G;
}

double lowest_apes_radial(const JTModel& m, double Q) {
  // On the e_M axis H_JT is already diagonal: lambda_min = F*Q*min(diag V_M).
  double vmin = m.V[m.M - 1].diagonal().minCoeff();
  return 0.5 * m.omega * m.omega * Q * Q + m.F * Q * vmin;
}

double golden_min(const JTModel& m, double a, double b, double rel_tol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = lowest_apes_radial(m, x1);
  double f2 = lowest_apes_radial(m, x2);
  while (b - a > rel_tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = lowest_apes_radial(m, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = lowest_apes_radial(m, x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Matrix electronic_rotation(const JTModel& model, const Vector& theta) {
  int N = model.N;
  if (theta.size() != N - 1)
    throw InvalidParameterError("expected N-1 pseudorotation angles");
  if (N == 2) {
    // Half-angle: conjugation by U doubles the angle in coupling space.
    return plane_rotation(2, 0, 1, 0.5 * theta[0]);
  }
  // Ordered product G(N-2,N-1; t_{N-1}) ... G(0,1; t_2) G(N-1,0; t_1);
  // carries e_N to the hyperspherical point of theta.  For N=3 this is
  // u = (sin t1 cos t2, sin t1 sin t2, cos t1).
  Matrix U = plane_rotation(N, N - 1, 0, theta[0]);
  for (int k = 1; k < N - 1; ++k)
    U = plane_rotation(N, k - 1, k, theta[k]) * U;
  return U;
}

TroughSpec find_trough(const JTModel& model) {
  if (model.F <= 0.0)
    throw DegenerateTroughError(
        "zero vibronic coupling: the minimum collapses to Q = 0");
  // Bracket the radial minimum, then refine.
  double scale = model.F / (model.omega * model.omega);
  double hi = scale;
  while (lowest_apes_radial(model, hi * 2) < lowest_apes_radial(model, hi))
    hi *= 2;
  double Qstar = golden_min(model, 0.0, 2 * hi, 1e-10);
  {
    // Golden section stalls at sqrt(eps); one parabolic fit through three
    // nearby points recovers full precision on the smooth radial profile.
    double h = 1e-4 * std::max(1.0, Qstar);
    double fm = lowest_apes_radial(model, Qstar - h);
    double f0 = lowest_apes_radial(model, Qstar);
    double fp = lowest_apes_radial(model, Qstar + h);
    double denom = fm - 2 * f0 + fp;
    if (denom > 0) Qstar += 0.5 * h * (fm - fp) / denom;
  }

  TroughSpec spec;
  spec.model = model;
  spec.Qstar = Qstar;
  spec.Emin = lowest_apes_radial(model, Qstar);
  spec.Q_M = Geometry::Zero(model.M);
  spec.Q_M[model.M - 1] = Qstar;

  // Guard: stationarity of the lowest APES in a few random tangent
  // directions at Q_M, by central differences.
  std::mt19937 rng(12345);
  std::normal_distribution<double> gauss;
  const double h = 1e-5;
  for (int trial = 0; trial < 5; ++trial) {
    Geometry d(model.M);
    for (int i = 0; i < model.M; ++i) d[i] = gauss(rng);
    d.normalize();
    double fp = apes(model, spec.Q_M + h * d)[0];
    double fm = apes(model, spec.Q_M - h * d)[0];
    if (std::abs(fp - fm) / (2 * h) > 1e-6)
      throw DegenerateTroughError("reference geometry is not stationary");
  }
  return spec;
}

TroughPoint trough_point(const TroughSpec& spec, const Vector& theta) {
  const JTModel& m = spec.model;
  if (theta.size() != m.N - 1)
    throw InvalidParameterError("expected N-1 pseudorotation angles");
  Matrix U = electronic_rotation(m, theta);
  Matrix R = induced_configuration_rotation(m, U);
  TroughPoint p;
  p.theta = theta;
  p.Q = R * spec.Q_M;
  return p;
}

PatternReport verify_trough_spectrum(const JTModel& model, const Geometry& Q) {
  if (Q.size() != model.M)
    throw InvalidGeometryError("geometry has wrong dimension");
  if (Q.norm() == 0.0)
    throw VacuousInputError("pattern undefined at Q = 0: spectrum is {0}");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(model, Q));
  Vector ev = es.eigenvalues().reverse();  // descending
  PatternReport rep;
  rep.x_value = ev[0];
  rep.ratios = ev / ev[0];
  double scale = ev.cwiseAbs().maxCoeff();
  bool ok = ev[0] > 0.0;
  for (int i = 1; i < model.N - 1 && ok; ++i)
    ok = std::abs(ev[i] - ev[0]) <= 1e-9 * scale;
  if (ok)
    ok = std::abs(ev[model.N - 1] + (model.N - 1) * ev[0]) <= 1e-9 * scale;
  rep.is_pattern = ok;
  return rep;
}

Vector antipode(const TroughSpec& spec, const Vector& theta) {
  int N = spec.model.N;
  if (theta.size() != N - 1)
    throw InvalidParameterError("expected N-1 pseudorotation angles");
  Vector out = theta;
  if (N == 2) {
    out[0] += 2 * std::numbers::pi;
    return out;
  }
  for (int i = 0; i < N - 2; ++i) out[i] = std::numbers::pi - theta[i];
  out[N - 2] = theta[N - 2] + std::numbers::pi;
  return out;
}

}  // namespace jtberry
