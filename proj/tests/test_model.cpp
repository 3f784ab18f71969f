#include <doctest.h>

#include <Eigen/QR>
#include <random>

#include "jtberry/model.hpp"
#include "jtberry/trough.hpp"

using namespace jtberry;

namespace {

std::mt19937 rng(7);

Vector random_vector(int n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

Matrix random_special_orthogonal(int n) {
  Matrix A(n, n);
  for (int i = 0; i < n; ++i) A.row(i) = random_vector(n).transpose();
  Eigen::HouseholderQR<Matrix> qr(A);
  Matrix Q = qr.householderQ();
  if (Q.determinant() < 0) Q.col(0) *= -1;
  return Q;
}

}  // namespace

TEST_CASE("build_model e_x_e") {
  JTModel m = build_model("e_x_e", 1.0, 1.0);
  CHECK(m.N == 2);
  CHECK(m.M == 2);
  Matrix sz(2, 2);
  sz << 1, 0, 0, -1;
  CHECK((m.V[1] - sz).cwiseAbs().maxCoeff() == 0.0);
  CHECK(m.c == doctest::Approx(2.0));
}

TEST_CASE("build_model t_e_t2 trace orthogonality") {
  JTModel m = build_model("t_e_t2", 1.0, 1.0);
  CHECK(m.N == 3);
  CHECK(m.M == 5);
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 5; ++k) {
      double t = (m.V[j] * m.V[k]).trace();
      CHECK(t == doctest::Approx(j == k ? m.c : 0.0).epsilon(1e-12));
    }
  // diagonal anchor
  CHECK(m.V[4](0, 0) == doctest::Approx(m.V[4](1, 1)));
  CHECK(m.V[4](2, 2) == doctest::Approx(-2 * m.V[4](0, 0)));
}

TEST_CASE("build_model zero coupling is valid") {
  JTModel m = build_model("e_x_e", 0.0, 1.0);
  Geometry Q = random_vector(2);
  CHECK(hamiltonian(m, Q).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("build_model rejects bad inputs") {
  CHECK_THROWS_AS(build_model("nosuch", 1.0, 1.0), ModelNotFoundError);
  CHECK_THROWS_AS(build_model("e_x_e", 1.0, 0.0), InvalidParameterError);
  CHECK_THROWS_AS(build_model("e_x_e", 1.0, -2.0), InvalidParameterError);
  CHECK_THROWS_AS(build_model("e_x_e", -1.0, 1.0), InvalidParameterError);
}

TEST_CASE("hamiltonian axis geometry and zero") {
  JTModel m = build_model("e_x_e", 1.5, 1.0);
  Geometry Q(2);
  Q << 0, 2.0;
  Matrix H = hamiltonian(m, Q);
  CHECK(H(0, 0) == doctest::Approx(3.0));
  CHECK(H(1, 1) == doctest::Approx(-3.0));
  CHECK(H(0, 1) == doctest::Approx(0.0));
  CHECK(hamiltonian(m, Geometry::Zero(2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(hamiltonian(m, Geometry::Zero(3)), InvalidGeometryError);
}

TEST_CASE("hamiltonian matches direct summation") {
  JTModel m = build_model("t_e_t2", 1.7, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Geometry Q = random_vector(5);
    Matrix want = Matrix::Zero(3, 3);
    for (int k = 0; k < 5; ++k) want += m.F * Q[k] * m.V[k];
    CHECK((hamiltonian(m, Q) - want).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("hamiltonian is linear in Q") {
  JTModel m = build_model("t_e_t2", 1.3, 1.0);
  Geometry Q1 = random_vector(5), Q2 = random_vector(5);
  Matrix lhs = hamiltonian(m, 2.5 * Q1 - 0.7 * Q2);
  Matrix rhs = 2.5 * hamiltonian(m, Q1) - 0.7 * hamiltonian(m, Q2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eigensystem diagonal case and gauge") {
  JTModel m = build_model("e_x_e", 1.0, 1.0);
  Geometry Q(2);
  Q << 0, 1;
  AdiabaticFrame f = eigensystem(m, Q);
  CHECK(f.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(f.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(f.eigenvectors(1, 0) == doctest::Approx(1.0));
  CHECK(f.eigenvectors(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("eigensystem clusters at a trough point") {
  JTModel m = build_model("t_e_t2", 1.0, 1.0);
  TroughSpec spec = find_trough(m);
  AdiabaticFrame f = eigensystem(m, spec.Q_M);
  REQUIRE(f.clusters.size() == 2);
  CHECK(f.clusters[0].size() == 1);
  CHECK(f.clusters[1].size() == 2);
}

TEST_CASE("eigensystem solver contract on random geometries") {
  JTModel m = build_model("t_e_t2", 2.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Geometry Q = random_vector(5);
    AdiabaticFrame f = eigensystem(m, Q);
    Matrix H = hamiltonian(m, Q);
    CHECK((f.eigenvectors.transpose() * f.eigenvectors -
           Matrix::Identity(3, 3))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    double scale = std::max(1.0, f.eigenvalues.cwiseAbs().maxCoeff());
    for (int i = 0; i < 3; ++i)
      CHECK((H * f.eigenvectors.col(i) -
             f.eigenvalues[i] * f.eigenvectors.col(i))
                .norm() < 1e-10 * scale);
  }
}

TEST_CASE("eigensystem is deterministic") {
  JTModel m = build_model("t_e_t2", 1.0, 1.0);
  Geometry Q = random_vector(5);
  AdiabaticFrame a = eigensystem(m, Q);
  AdiabaticFrame b = eigensystem(m, Q);
  CHECK((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apes values") {
  JTModel m = build_model("e_x_e", 1.0, 1.0);
  Geometry Q(2);
  Q << 0, 1;
  Vector e = apes(m, Q);
  CHECK(e[0] == doctest::Approx(-0.5));
  CHECK(e[1] == doctest::Approx(1.5));
  Vector z = apes(m, Geometry::Zero(2));
  CHECK(z.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("apes trough isotropy between two points") {
  JTModel m = build_model("t_e_t2", 1.0, 1.0);
  TroughSpec spec = find_trough(m);
  Vector th1(2), th2(2);
  th1 << 0.7, 1.1;
  th2 << 2.0, 4.9;
  double e1 = apes(m, trough_point(spec, th1).Q)[0];
  double e2 = apes(m, trough_point(spec, th2).Q)[0];
  CHECK(e1 == doctest::Approx(e2).epsilon(1e-12));
}

TEST_CASE("induced rotation e_x_e half-angle") {
  JTModel m = build_model("e_x_e", 1.0, 1.0);
  double theta = 0.83;
  Vector th(1);
  th << theta;
  Matrix U = electronic_rotation(m, th);
  Matrix R = induced_configuration_rotation(m, U);
  Matrix want(2, 2);
  want << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  CHECK((R - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("induced rotation identity and error paths") {
  JTModel m = build_model("t_e_t2", 1.0, 1.0);
  Matrix R = induced_configuration_rotation(m, Matrix::Identity(3, 3));
  CHECK((R - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  Matrix bad = 2 * Matrix::Identity(3, 3);
  CHECK_THROWS_AS(induced_configuration_rotation(m, bad),
                  InvalidRotationError);
}

TEST_CASE("induced rotation orthogonality and operator identity") {
  JTModel m = build_model("t_e_t2", 1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix U = random_special_orthogonal(3);
    Matrix R = induced_configuration_rotation(m, U);
    CHECK((R.transpose() * R - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() <
          1e-9);
    Geometry Q = random_vector(5);
    Matrix lhs = hamiltonian(m, R * Q);
    Matrix rhs = U * hamiltonian(m, Q) * U.transpose();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("equivariance for both built-ins") {
  for (const char* name : {"e_x_e", "t_e_t2"}) {
    JTModel m = build_model(name, 1.0, 1.0);
    TroughSpec spec = find_trough(m);
    for (int trial = 0; trial < 10; ++trial) {
      Matrix U = m.N == 2
                     ? electronic_rotation(m, 2 * random_vector(1))
                     : random_special_orthogonal(m.N);
      Matrix R = induced_configuration_rotation(m, U);
      Vector th = random_vector(m.N - 1);
      Geometry Q = trough_point(spec, th).Q;
      Matrix lhs = hamiltonian(m, R * Q);
      Matrix rhs = U * hamiltonian(m, Q) * U.transpose();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("custom model hook validates invariants") {
  Matrix sx(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  JTModel m = make_custom_model("custom2", 2, {sx, sz}, 1.0, 1.0);
  CHECK(m.M == 2);
  // V_M must carry the diagonal pattern
  CHECK_THROWS_AS(make_custom_model("bad", 2, {sz, sx}, 1.0, 1.0),
                  InvalidParameterError);
}
