#pragma once

#include <vector>

#include "jtberry/errors.hpp"

namespace jtberry {

enum class RotorParity { even, odd, both };

struct RotorLevel {
  double L = 0.0;  // half-odd-integer j in the N=2 antiperiodic sector
  double energy = 0.0;
  int degeneracy = 0;
};

struct RotorSpectrum {
  int N = 0;
  RotorParity parity = RotorParity::both;
  std::vector<RotorLevel> levels;
};

/// Dimension of the angular-momentum-L multiplet on S^{N-1}:
/// (2L+N-2) (L+N-3)! / (L! (N-2)!).
long rotor_degeneracy(int N, int L);

/// Free particle on S^{N-1}, energy L(L+N-2)/2 with unit moment of
/// inertia, filtered by parity under inversion ((-1)^L).  Odd parity is
/// the sector forced by the antiperiodic boundary condition; for N = 2 it
/// is the half-odd-integer sector e^{+-i j phi}, energy j^2/2,
/// each level doubly degenerate.
RotorSpectrum rotor_spectrum(int N, RotorParity parity, int k);

}  // namespace jtberry
