#include "jtberry/rotor.hpp"

namespace jtberry {

long rotor_degeneracy(int N, int L) {
  if (N < 2 || L < 0) throw InvalidParameterError("need N >= 2 and L >= 0");
  if (L == 0) return 1;
  if (N == 2) return 2;  // e^{+-i L phi}
  // (2L+N-2) (L+N-3)! / (L! (N-2)!)
  long num = 2 * static_cast<long>(L) + N - 2;
  // (L+N-3)! / L! = (L+1)(L+2)...(L+N-3)
  for (int i = L + 1; i <= L + N - 3; ++i) num *= i;
  long den = 1;
  for (int i = 2; i <= N - 2; ++i) den *= i;
  return num / den;
}

RotorSpectrum rotor_spectrum(int N, RotorParity parity, int k) {
  if (N < 2) throw InvalidParameterError("sphere ambient dimension must be >= 2");
  if (k < 1) throw InvalidParameterError("need at least one level");
  RotorSpectrum spec;
  spec.N = N;
  spec.parity = parity;
  if (N == 2 && parity == RotorParity::odd) {
    // Antiperiodic sector: j = 1/2, 3/2, ...; e^{+-i j phi} pairs.
    for (int i = 0; i < k; ++i) {
      double j = i + 0.5;
      spec.levels.push_back({j, 0.5 * j * j, 2});
    }
    return spec;
  }
  int step = parity == RotorParity::both ? 1 : 2;
  int L = parity == RotorParity::odd ? 1 : 0;
  for (int i = 0; i < k; ++i, L += step) {
    double e = 0.5 * L * (L + N - 2);
    spec.levels.push_back(
        {static_cast<double>(L), e, static_cast<int>(rotor_degeneracy(N, L))});
  }
  return spec;
}

}  // namespace jtberry
