#pragma once

#include "jtberry/model.hpp"

namespace jtberry {

/// The continuous minimum-energy trough of the lowest APES.
struct TroughSpec {
  JTModel model;
  double Qstar = 0.0;  // trough radius
  double Emin = 0.0;   // lowest APES value on the trough
  Geometry Q_M;        // reference geometry Qstar * e_M
};

struct TroughPoint {
  Vector theta;  // N-1 pseudorotation angles
  Geometry Q;
};

struct PatternReport {
  bool is_pattern = false;
  double x_value = 0.0;
  Vector ratios;  // descending eigenvalues divided by x
};

/// Electronic SO(N) rotation U(theta) carrying |psi_N> to the trough chart
/// point with angles theta.  For N = 2 the electronic angle is theta/2
/// (conjugation doubles the angle in configuration space); for N >= 3 theta
/// are hyperspherical angles of U(theta)|psi_N>, with theta_1..theta_{N-2}
/// in [0, pi] and the last angle in [0, 2pi).
Matrix electronic_rotation(const JTModel& model, const Vector& theta);

/// Radial minimization of omega^2 Q^2/2 + lambda_min(H_JT(Q e_M)) by
/// bracketing plus golden-section refinement.
TroughSpec find_trough(const JTModel& model);

/// Maps pseudorotation angles to the trough geometry Q = R(theta) Q_M.
TroughPoint trough_point(const TroughSpec& spec, const Vector& theta);

/// Checks the trough spectrum pattern {x, ..., x, -(N-1)x}, x > 0.
PatternReport verify_trough_spectrum(const JTModel& model, const Geometry& Q);

/// Angles of the antipodal electronic point: same trough geometry for
/// N >= 3 (the RP^{N-1} identification), U(theta')|psi_N> = -U(theta)|psi_N>.
/// For N = 2 returns theta + 2*pi (the S^1 trough has no identification;
/// the lift flips only after a full winding).
Vector antipode(const TroughSpec& spec, const Vector& theta);

}  // namespace jtberry
