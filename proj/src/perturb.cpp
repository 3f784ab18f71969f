#include "jtberry/perturb.hpp"

#include <cmath>
#include <thread>

namespace jtberry {

PerturbedModel add_quadratic(const JTModel& base, double g) {
  if (base.name != "e_x_e")
    throw UnsupportedModelError(
        "quadratic coupling is implemented for e_x_e only");
  PerturbedModel p;
  p.base = base;
  p.kind = PerturbKind::quadratic;
  p.g = g;
  return p;
}

PerturbedModel add_field(const JTModel& base, const Matrix& W_f,
                         double epsilon) {
  if (W_f.rows() != base.N || W_f.cols() != base.N)
    throw InvalidPerturbationError("field matrix has wrong shape");
  if ((W_f - W_f.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidPerturbationError("field matrix must be symmetric");
  PerturbedModel p;
  p.base = base;
  p.kind = PerturbKind::field;
  p.W_f = W_f;
  p.epsilon = epsilon;
  return p;
}

Matrix perturbed_hamiltonian(const PerturbedModel& p, const Geometry& Q) {
  Matrix H = hamiltonian(p.base, Q);
  if (p.kind == PerturbKind::quadratic && p.g != 0.0) {
    // Trigonal warping: second-order coupling in the (Q_x, Q_z) plane.
    double qx = Q[0], qz = Q[1];
    H += p.g * ((qz * qz - qx * qx) * p.base.V[1] -
                2.0 * qx * qz * p.base.V[0]);
  } else if (p.kind == PerturbKind::field && p.epsilon != 0.0) {
    H += p.epsilon * p.W_f;
  }
  return H;
}

HamiltonianFn perturbed_hamiltonian_fn(const PerturbedModel& p) {
  return [p](const Geometry& Q) { return perturbed_hamiltonian(p, Q); };
}

namespace {

double field_ground_splitting(const PerturbedModel& p, int n_max) {
  SparseOperator H = build_vibronic(p.base, n_max);
  const std::int64_t nb = H.rows() / p.base.N;
  std::vector<Eigen::Triplet<double>> trip;
  for (int a = 0; a < p.base.N; ++a)
    for (int b = 0; b < p.base.N; ++b)
      if (p.W_f(a, b) != 0.0)
        for (std::int64_t i = 0; i < nb; ++i)
          trip.emplace_back(a * nb + i, b * nb + i,
                            p.epsilon * p.W_f(a, b));
  SparseOperator F(H.rows(), H.cols());
  F.setFromTriplets(trip.begin(), trip.end());
  H += F;
  std::vector<double> ev = lowest_eigenvalues(H, 2, p.base.N + 2);
  return ev[1] - ev[0];
}

}  // namespace

std::vector<ScanRow> robustness_scan(const PerturbedModel& p,
                                     const LoopPath& loop,
                                     const std::vector<double>& strengths,
                                     int splitting_n_max, int threads) {
  std::vector<ScanRow> rows(strengths.size());
  auto run_row = [&](std::size_t idx) {
    ScanRow& row = rows[idx];
    row.strength = strengths[idx];
    PerturbedModel pi = p;
    if (p.kind == PerturbKind::quadratic)
      pi.g = row.strength;
    else
      pi.epsilon = row.strength;
    try {
      TransportRecord rec =
          transport_ground_fn(perturbed_hamiltonian_fn(pi), p.base.N, loop);
      row.phase_raw = rec.transported.front().dot(rec.C_end);
      row.min_gap = rec.min_gap;
      if (std::abs(std::abs(row.phase_raw) - 1.0) > kSnapTol)
        throw ResolutionError("raw phase not within snap tolerance");
      row.phase_snapped = row.phase_raw > 0 ? 1 : -1;
      if (splitting_n_max > 0 && p.kind == PerturbKind::field)
        row.splitting = field_ground_splitting(pi, splitting_n_max);
    } catch (const Error& e) {
      row.status = e.code();
    }
  };

  int nthreads = std::max(1, threads);
  if (nthreads == 1 || strengths.size() < 2) {
    for (std::size_t i = 0; i < strengths.size(); ++i) run_row(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk =
        (strengths.size() + nthreads - 1) / static_cast<std::size_t>(nthreads);
    for (int t = 0; t < nthreads; ++t) {
      std::size_t lo = t * chunk;
      std::size_t hi = std::min(strengths.size(), lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) run_row(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace jtberry
