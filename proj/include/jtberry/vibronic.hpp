#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "jtberry/model.hpp"

namespace jtberry {

/// Harmonic-oscillator product basis truncated by total quanta,
/// tensored with the N electronic diabatic states.  Flat index is
/// alpha * n_occ + occupation index.
class VibronicBasis {
public:
  VibronicBasis(const JTModel& model, int n_max, std::int64_t max_dim);

  int n_max() const { return n_max_; }
  std::int64_t dim() const { return dim_; }
  std::int64_t n_occ() const { return static_cast<std::int64_t>(occs_.size()); }
  const std::vector<std::vector<int>>& occupations() const { return occs_; }

  // Index of an occupation vector, or -1 when outside the cutoff.
  std::int64_t occ_index(const std::vector<int>& occ) const;

private:
  int n_max_;
  std::int64_t dim_;
  std::vector<std::vector<int>> occs_;
  std::unordered_map<std::uint64_t, std::int64_t> lookup_;
  std::uint64_t key(const std::vector<int>& occ) const;
};

using SparseOperator = Eigen::SparseMatrix<double>;

inline constexpr std::int64_t kDefaultDimBudget = 200000;

/// Full molecular Hamiltonian P^2/2 + omega^2 Q^2/2 + H_JT(Q) in the
/// truncated basis, with Q_k = (a_k + a_k^dag)/sqrt(2 omega).
SparseOperator build_vibronic(const JTModel& model, int n_max,
                              std::int64_t max_dim = kDefaultDimBudget);

struct VibronicSpectrum {
  std::vector<double> levels;        // ascending
  std::vector<int> degeneracies;     // cluster sizes, ascending clusters
  int n_max = 0;
  bool converged = false;
  double ground_shift = 0.0;  // ground-cluster change vs the n_max-2 run
};

inline constexpr double kDefaultVibronicTol = 1e-6;

/// k lowest levels by a block Lanczos iteration with full
/// reorthogonalization; clusters grouped under relative tol.  Sets the
/// convergence flag by comparing against an n_max-2 run.
VibronicSpectrum low_spectrum(const JTModel& model, int n_max, int k,
                              double tol = kDefaultVibronicTol,
                              std::int64_t max_dim = kDefaultDimBudget,
                              bool check_convergence = true);

/// k lowest eigenvalues of a sparse symmetric operator (block Lanczos).
std::vector<double> lowest_eigenvalues(const SparseOperator& H, int k,
                                       int block_size);

struct VgsdReport {
  bool applicable = false;  // adiabatic-regime heuristic F^2/omega^3 >= 10
  bool converged = false;
  int ground_degeneracy = 0;
  double ground_splitting = 0.0;  // relative spread of the ground cluster
  bool matches_vector_irrep = false;
};

/// Checks vibronic ground-state degeneracy against the vector-irrep
/// dimension N.
VgsdReport vgsd_check(const JTModel& model, int n_max,
                      std::int64_t max_dim = kDefaultDimBudget);

}  // namespace jtberry
