#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jtberry/trough.hpp"

namespace jtberry {

enum class LoopKind { contractible, nontrivial, custom };

/// Discretized closed curve on the trough.  points[0] == points[S]; the
/// chart record keeps the per-point theta representatives actually used.
struct LoopPath {
  std::vector<Geometry> points;
  LoopKind kind = LoopKind::custom;
  Geometry base;
  std::vector<Vector> thetas;
};

struct TransportRecord {
  std::vector<Vector> transported;  // C[t] at each point, unit norm
  std::vector<double> step_overlaps;
  Vector C_end;
  double min_gap = 0.0;
};

struct HolonomyResult {
  int gamma0 = 0;          // snapped ground-state phase, +1 or -1
  double gamma0_raw = 0.0;
  Matrix W;                // (N-1)x(N-1) orthogonal excited holonomy
  int flipped_count = 0;   // multiplicity of -1 among eigenvalues of sym(W)
  double min_step_overlap = 1.0;
  double min_gap = 0.0;
  int steps = 0;
};

/// Electronic Hamiltonian as a function of geometry; lets the transport
/// machinery run unchanged on perturbed models.
using HamiltonianFn = std::function<Matrix(const Geometry&)>;

inline constexpr int kMinLoopSteps = 64;
inline constexpr double kOverlapFloor = 0.9;
inline constexpr double kGapFloorRel = 1e-6;
inline constexpr double kSnapTol = 1e-6;
// Contractible-loop angular radius.  The excited-pair holonomy of a small
// circle is a rotation by the enclosed solid angle (about pi r^2), so the
// radius is kept small enough that W stays within 1e-6 of the identity.
inline constexpr double kContractibleRadius = 2e-4;

/// Closed loop on the trough.  contractible: a small circle (angular
/// diameter <= 0.2 rad) around base_theta.  nontrivial: the parameter-space
/// geodesic from base_theta to its antipode, closed in Q-space by the
/// RP^{N-1} identification (for N = 2: one full winding of the circle).
LoopPath make_loop(const TroughSpec& spec, LoopKind kind,
                   const Vector& base_theta, int steps);

/// Joins two loops sharing a base point.
LoopPath concatenate(const LoopPath& a, const LoopPath& b);

/// Discrete parallel transport of the ground eigenvector: at each step the
/// sign is chosen so the overlap with the previous vector is positive.
TransportRecord transport_ground(const JTModel& model, const LoopPath& path);
TransportRecord transport_ground_fn(const HamiltonianFn& h, int N,
                                    const LoopPath& path);

/// Ground-state geometric phase <C[0]|C[1]>, snapped to +-1.
int berry_phase(const JTModel& model, const LoopPath& path);
double berry_phase_raw(const JTModel& model, const LoopPath& path);

/// Ground phase plus the orthogonal holonomy of the excited cluster,
/// accumulated from per-step overlap matrices with polar
/// re-orthonormalization, expressed in the initial excited frame.
HolonomyResult subspace_holonomy(const JTModel& model, const LoopPath& path);
HolonomyResult subspace_holonomy_fn(const HamiltonianFn& h, int N,
                                    const LoopPath& path);

/// Gauge-independent rank-1 projector onto the ground line at Q.
Matrix projector(const JTModel& model, const Geometry& Q);

}  // namespace jtberry
