#include "jtberry/vibronic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace jtberry {

namespace {

void enumerate_occs(int M, int n_max, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out, int used) {
  if (static_cast<int>(cur.size()) == M) {
    out.push_back(cur);
    return;
  }
  for (int n = 0; n <= n_max - used; ++n) {
    cur.push_back(n);
    enumerate_occs(M, n_max, cur, out, used + n);
    cur.pop_back();
  }
}

}  // namespace

std::uint64_t VibronicBasis::key(const std::vector<int>& occ) const {
  std::uint64_t k = 0;
  for (int n : occ) k = (k << 6) | static_cast<std::uint64_t>(n);
  return k;
}

VibronicBasis::VibronicBasis(const JTModel& model, int n_max,
                             std::int64_t max_dim)
    : n_max_(n_max) {
  if (n_max < 1) throw InvalidParameterError("n_max must be >= 1");
  if (n_max > 63) throw CapacityError("n_max exceeds the index packing limit");
  std::vector<int> cur;
  enumerate_occs(model.M, n_max, cur, occs_, 0);
  dim_ = static_cast<std::int64_t>(occs_.size()) * model.N;
  if (dim_ > max_dim)
    throw CapacityError("basis dimension " + std::to_string(dim_) +
                        " exceeds the budget " + std::to_string(max_dim));
  lookup_.reserve(occs_.size());
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(occs_.size()); ++i)
    lookup_.emplace(key(occs_[i]), i);
}

std::int64_t VibronicBasis::occ_index(const std::vector<int>& occ) const {
  for (int n : occ)
    if (n < 0 || n > n_max_) return -1;
  auto it = lookup_.find(key(occ));
  return it == lookup_.end() ? -1 : it->second;
}

SparseOperator build_vibronic(const JTModel& model, int n_max,
                              std::int64_t max_dim) {
  VibronicBasis basis(model, n_max, max_dim);
  const std::int64_t nb = basis.n_occ();
  const int N = model.N;
  const int M = model.M;
  const double om = model.omega;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(basis.dim()) * (1 + 2 * M));
  for (std::int64_t i = 0; i < nb; ++i) {
    const std::vector<int>& occ = basis.occupations()[i];
    int total = 0;
    for (int n : occ) total += n;
    double diag = om * (total + 0.5 * M);
    for (int a = 0; a < N; ++a)
      trip.emplace_back(a * nb + i, a * nb + i, diag);
    // Q_k = (a_k + a_k^dag)/sqrt(2 omega): raise mode k by one quantum;
    // the lowering partner comes from symmetry below.
    std::vector<int> up = occ;
    for (int k = 0; k < M; ++k) {
      up[k] += 1;
      std::int64_t j = basis.occ_index(up);
      up[k] -= 1;
      if (j < 0) continue;
      double amp = model.F * std::sqrt((occ[k] + 1) / (2.0 * om));
      for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
          double v = model.V[k](a, b);
          if (v == 0.0) continue;
          trip.emplace_back(a * nb + i, b * nb + j, v * amp);
          trip.emplace_back(b * nb + j, a * nb + i, v * amp);
        }
    }
  }
  SparseOperator H(basis.dim(), basis.dim());
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

std::vector<double> lowest_eigenvalues(const SparseOperator& H, int k,
                                       int block_size) {
  const std::int64_t n = H.rows();
  if (k < 1 || k > n) throw InvalidParameterError("bad eigenvalue count");
  const int b = static_cast<int>(std::min<std::int64_t>(block_size, n));
  const int Kmax = static_cast<int>(
      std::min<std::int64_t>(n, std::max(700, 8 * (k + b))));

  Matrix Q(n, Kmax), HQ(n, Kmax), T = Matrix::Zero(Kmax, Kmax);
  std::mt19937 rng(20240817);
  std::normal_distribution<double> gauss;
  auto fill_random = [&](Eigen::Ref<Vector> v) {
    for (std::int64_t i = 0; i < n; ++i) v[i] = gauss(rng);
  };
  // Column-wise Gram-Schmidt with a second pass; random restart on
  // breakdown keeps the block at full rank.
  auto add_column = [&](int col, Vector v) {
    for (int attempt = 0; attempt < 5; ++attempt) {
      for (int pass = 0; pass < 2; ++pass)
        if (col > 0)
          v -= Q.leftCols(col) * (Q.leftCols(col).transpose() * v);
      double nv = v.norm();
      if (nv > 1e-8) {
        Q.col(col) = v / nv;
        return;
      }
      fill_random(v);
    }
    throw SolverError("could not extend the Krylov basis");
  };

  int K = 0;
  int block_count = 0;
  std::vector<double> out;
  while (K < Kmax) {
    int prev = K;
    ++block_count;
    for (int j = 0; j < b && K < Kmax; ++j, ++K) {
      Vector v(n);
      if (prev == 0) {
        fill_random(v);
      } else {
        v = HQ.col(K - b);
      }
      add_column(K, std::move(v));
    }
    for (int c = prev; c < K; ++c) HQ.col(c) = H * Q.col(c);
    // Extend the projected matrix.
    Matrix Tcol = Q.leftCols(K).transpose() * HQ.middleCols(prev, K - prev);
    T.block(0, prev, K, K - prev) = Tcol;
    T.block(prev, 0, K - prev, K) = Tcol.transpose();

    if (K < Kmax && (K < k + b || block_count % 4 != 0)) continue;
    Eigen::SelfAdjointEigenSolver<Matrix> es(T.topLeftCorner(K, K));
    if (K == Kmax || es.eigenvalues().size() >= k) {
      double scale = std::max(std::abs(es.eigenvalues()[0]),
                              std::abs(es.eigenvalues()[K - 1]));
      double tol_res = 1e-7 * std::max(1.0, scale);
      bool ok = K >= k;
      for (int i = 0; i < k && ok; ++i) {
        Vector z = es.eigenvectors().col(i);
        double lam = es.eigenvalues()[i];
        double res =
            (HQ.leftCols(K) * z - lam * (Q.leftCols(K) * z)).norm();
        ok = res <= tol_res;
      }
      if (ok || K == Kmax) {
        if (!ok)
          throw SolverError(
              "block Lanczos did not reach the residual tolerance at "
              "maximum Krylov dimension " +
              std::to_string(Kmax));
        out.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
        return out;
      }
    }
  }
  throw SolverError("block Lanczos failed to converge");
}

VibronicSpectrum low_spectrum(const JTModel& model, int n_max, int k,
                              double tol, std::int64_t max_dim,
                              bool check_convergence) {
  if (k < model.N + 1)
    throw InvalidParameterError("need k >= N+1 to resolve the ground cluster");
  SparseOperator H = build_vibronic(model, n_max, max_dim);
  int block = std::max(model.N + 2, std::min(k, 16));
  VibronicSpectrum spec;
  spec.n_max = n_max;
  spec.levels = lowest_eigenvalues(H, k, block);

  // Cluster under relative tolerance.
  int cur = 1;
  for (std::size_t i = 1; i < spec.levels.size(); ++i) {
    if (spec.levels[i] - spec.levels[i - 1] <
        tol * std::max(1.0, std::abs(spec.levels[i]))) {
      ++cur;
    } else {
      spec.degeneracies.push_back(cur);
      cur = 1;
    }
  }
  spec.degeneracies.push_back(cur);

  if (check_convergence && n_max >= 3) {
    VibronicSpectrum ref =
        low_spectrum(model, n_max - 2, k, tol, max_dim, false);
    double a = spec.levels[0], r = ref.levels[0];
    spec.ground_shift = std::abs(a - r);
    spec.converged = spec.ground_shift < 10 * tol * std::max(1.0, std::abs(a));
  }
  return spec;
}

VgsdReport vgsd_check(const JTModel& model, int n_max, std::int64_t max_dim) {
  VgsdReport rep;
  double ratio = model.F * model.F / std::pow(model.omega, 3);
  rep.applicable = ratio >= 10.0;
  if (!rep.applicable) return rep;
  VibronicSpectrum spec =
      low_spectrum(model, n_max, model.N + 2, kDefaultVibronicTol, max_dim);
  rep.converged = spec.converged;
  rep.ground_degeneracy = spec.degeneracies.front();
  double lo = spec.levels.front();
  double hi = spec.levels[rep.ground_degeneracy - 1];
  rep.ground_splitting = std::abs(hi - lo) / std::max(1.0, std::abs(lo));
  rep.matches_vector_irrep = rep.ground_degeneracy == model.N;
  return rep;
}

}  // namespace jtberry
