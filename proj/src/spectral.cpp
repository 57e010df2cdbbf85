#include "qpol/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

namespace qpol {

const ManifoldSpectrum* SpectralData::find(int n_photons) const {
  auto it = std::lower_bound(manifolds.begin(), manifolds.end(), n_photons,
                             [](const ManifoldSpectrum& m, int n) { return m.N < n; });
  return (it != manifolds.end() && it->N == n_photons) ? &*it : nullptr;
}

SpectralData spectra(const TwoModeState& state) {
  const TwoModeState blocks = state.is_pure() ? block_diagonalize(state) : state;
  if (!state.is_pure()) require_valid(blocks);

  SpectralData out;
  for (const auto& b : blocks.block_diagonal().blocks) {
    if (b.weight() < tol::kDropWeight) continue;
    const Matrix normalized = b.matrix() / b.weight();
    const Matrix herm = (normalized + normalized.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);

    ManifoldSpectrum m;
    m.N = b.photons();
    m.weight = b.weight();
    m.eigenvalues.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
    std::sort(m.eigenvalues.begin(), m.eigenvalues.end(), std::greater<>());
    for (double& lambda : m.eigenvalues) {
      if (lambda < -tol::kPsd)
        throw InvalidState(fmt::format("block N={}: eigenvalue {:.6e} of the normalized block", m.N, lambda));
      lambda = std::clamp(lambda, 0.0, 1.0);
    }
    const double cutoff = tol::kRank * m.eigenvalues.front();
    for (double& lambda : m.eigenvalues) {
      if (lambda > cutoff)
        ++m.rank;
      else
        lambda = 0.0;
    }
    out.manifolds.push_back(std::move(m));
  }
  return out;
}

double xi(const ManifoldSpectrum& manifold, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError(fmt::format("s = {} outside [0, 1]", s));
  if (s == 0.0) return static_cast<double>(manifold.rank);
  double sum = 0.0;
  for (double lambda : manifold.eigenvalues)
    if (lambda > 0.0) sum += std::pow(lambda, s);
  return sum;
}

double xi(const SpectralData& spec, int n_photons, double s) {
  const ManifoldSpectrum* m = spec.find(n_photons);
  if (m == nullptr) throw DomainError(fmt::format("manifold N={} not present", n_photons));
  return xi(*m, s);
}

}  // namespace qpol
