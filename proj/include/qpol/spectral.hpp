#pragma once

#include <vector>

#include "qpol/fock.hpp"

namespace qpol {

struct ManifoldSpectrum {
  int N = 0;
  double weight = 0.0;              // p_N
  std::vector<double> eigenvalues;  // of rho^(N)/p_N, descending, sub-rank entries set to 0
  int rank = 0;                     // nu_N
};

/// Per-manifold spectra of a block-diagonal state, ordered by N.
struct SpectralData {
  std::vector<ManifoldSpectrum> manifolds;

  /// nullptr when manifold N is not stored.
  const ManifoldSpectrum* find(int n_photons) const;
};

namespace tol {
/// Eigenvalues at or below this fraction of the largest one count as zero.
inline constexpr double kRank = 1e-10;
}  // namespace tol

/// Accepts any valid state; pure inputs are block-diagonalized first.
SpectralData spectra(const TwoModeState& state);

/// xi_N^(s) = sum_n lambda_{N,n}^s with 0^0 = 0, so xi^(0) = nu_N, xi^(1) = 1.
double xi(const ManifoldSpectrum& manifold, double s);
double xi(const SpectralData& spec, int n_photons, double s);

}  // namespace qpol
