#include "qpol/su2.hpp"

#include <cmath>
#include <map>

#include <fmt/format.h>

namespace qpol {

StokesBlock stokes_block(int n_photons) {
  if (n_photons < 0) throw DomainError(fmt::format("negative photon number {}", n_photons));
  const Eigen::Index dim = n_photons + 1;
  StokesBlock out{n_photons, Matrix::Zero(dim, dim), Matrix::Zero(dim, dim), Matrix::Zero(dim, dim)};
  const Complex i(0.0, 1.0);
  for (int n = 0; n <= n_photons; ++n) {
    out.S3(n, n) = 2.0 * n - n_photons;
    if (n < n_photons) {
      // a_H^dag a_V |n, N-n> = sqrt((n+1)(N-n)) |n+1, N-n-1>
      const double amp = std::sqrt(static_cast<double>((n + 1) * (n_photons - n)));
      out.S1(n + 1, n) = amp;
      out.S1(n, n + 1) = amp;
      out.S2(n + 1, n) = -i * amp;
      out.S2(n, n + 1) = i * amp;
    }
  }
  return out;
}

namespace {

// exp(-i t H) for Hermitian H via its eigendecomposition.
Matrix hermitian_exponential(const Matrix& generator, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(generator);
  const Eigen::VectorXd& w = solver.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -t * w(k));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix diagonal_exponential(int n_photons, double t) {
  Vector d(n_photons + 1);
  for (int n = 0; n <= n_photons; ++n) d(n) = std::polar(1.0, -t * (2.0 * n - n_photons));
  return d.asDiagonal();
}

}  // namespace

Matrix polarization_unitary(int n_photons, const EulerAngles& angles) {
  if (n_photons < 0) throw DomainError(fmt::format("negative photon number {}", n_photons));
  if (!std::isfinite(angles.phi) || !std::isfinite(angles.theta) || !std::isfinite(angles.psi))
    throw DomainError("Euler angles must be finite");
  const Eigen::Index dim = n_photons + 1;
  Matrix u = Matrix::Identity(dim, dim);
  // S3 is diagonal in this basis; zero angles contribute an exact identity.
  if (angles.phi != 0.0) u = diagonal_exponential(n_photons, angles.phi / 2.0);
  if (angles.theta != 0.0) u = u * hermitian_exponential(stokes_block(n_photons).S2, angles.theta / 2.0);
  if (angles.psi != 0.0) u = u * diagonal_exponential(n_photons, angles.psi / 2.0);
  return u;
}

TwoModeState transform_state(const TwoModeState& state, const EulerAngles& angles) {
  require_valid(state);
  std::map<int, Matrix> unitaries;
  auto unitary_for = [&](int n) -> const Matrix& {
    auto it = unitaries.find(n);
    if (it == unitaries.end()) it = unitaries.emplace(n, polarization_unitary(n, angles)).first;
    return it->second;
  };

  if (state.is_pure()) {
    std::map<int, Vector> manifolds;
    for (const auto& e : state.pure().entries) {
      auto [it, inserted] = manifolds.try_emplace(e.N, Vector::Zero(e.N + 1));
      it->second(e.n) += e.amplitude;
    }
    PureAmplitudes out;
    for (const auto& [n, c] : manifolds) {
      const Vector rotated = unitary_for(n) * c;
      for (int k = 0; k <= n; ++k)
        if (rotated(k) != Complex(0.0, 0.0)) out.entries.push_back({n, k, rotated(k)});
    }
    return TwoModeState(std::move(out));
  }

  const BlockDiagonal& in = state.block_diagonal();
  BlockDiagonal out;
  out.discarded_mass = in.discarded_mass;
  for (const auto& b : in.blocks) {
    const Matrix& u = unitary_for(b.photons());
    out.blocks.emplace_back(b.photons(), Matrix(u * b.matrix() * u.adjoint()), b.weight());
  }
  return TwoModeState(std::move(out));
}

TwoModeState unpolarized_state(const UnpolarizedWeights& weights) {
  check_weights(weights);
  std::vector<ManifoldBlock> blocks;
  for (const auto& [n, w] : weights.weights) {
    if (w == 0.0) continue;
    const Eigen::Index dim = n + 1;
    blocks.emplace_back(n, Matrix(Matrix::Identity(dim, dim) * (w / static_cast<double>(dim))), w);
  }
  return TwoModeState(std::move(blocks));
}

}  // namespace qpol
