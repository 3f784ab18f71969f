#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jtberry/holonomy.hpp"
#include "jtberry/vibronic.hpp"

namespace jtberry {

enum class PerturbKind { quadratic, field };

/// Base model plus a symmetry-breaking term: quadratic vibronic coupling
/// (e_x_e only, trigonal-warping form) or a geometry-independent
/// electronic field.
struct PerturbedModel {
  JTModel base;
  PerturbKind kind = PerturbKind::field;
  double g = 0.0;       // quadratic strength
  Matrix W_f;           // field matrix, real symmetric N x N
  double epsilon = 0.0; // field strength
};

/// H(Q) = F(Q_x V_x + Q_z V_z) + g[(Q_z^2-Q_x^2) V_z - 2 Q_x Q_z V_x].
PerturbedModel add_quadratic(const JTModel& base, double g);

/// H(Q) -> H(Q) + epsilon * W_f.
PerturbedModel add_field(const JTModel& base, const Matrix& W_f,
                         double epsilon);

Matrix perturbed_hamiltonian(const PerturbedModel& p, const Geometry& Q);
HamiltonianFn perturbed_hamiltonian_fn(const PerturbedModel& p);

struct ScanRow {
  double strength = 0.0;
  double phase_raw = 0.0;
  int phase_snapped = 0;
  double min_gap = 0.0;
  std::optional<double> splitting;
  std::string status = "ok";
};

/// Re-runs ground transport on the same geometric loop at each strength.
/// Per-row failures are recorded in the status column.  When
/// splitting_n_max > 0 and the perturbation is a field term, the vibronic
/// ground-cluster splitting is computed at that (reduced) cutoff.
std::vector<ScanRow> robustness_scan(const PerturbedModel& p,
                                     const LoopPath& loop,
                                     const std::vector<double>& strengths,
                                     int splitting_n_max = 0,
                                     int threads = 1);

}  // namespace jtberry
