#pragma once

// Two-mode field states in the photon-number-ordered Fock basis.
//
// The N-th excitation manifold is spanned by |n, N-n>, n = 0..N, where n
// counts horizontal-mode photons. A state is held either as a pure vector of
// amplitudes c_{N,n} or as a list of manifold blocks rho^(N) (unnormalized,
// trace p_N). Off-manifold coherences only exist in the pure form.

#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qpol {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class InvalidState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double kNormalization = 1e-9;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsd = 1e-10;
inline constexpr double kBlockTrace = 1e-10;
/// Manifolds lighter than this are dropped by block_diagonalize.
inline constexpr double kDropWeight = 1e-12;
}  // namespace tol

/// Offset of manifold N inside the dense truncated space: N(N+1)/2.
constexpr std::size_t manifold_offset(int n_photons) {
  return static_cast<std::size_t>(n_photons) * static_cast<std::size_t>(n_photons + 1) / 2;
}

/// Dimension of the space holding manifolds 0..truncation.
constexpr std::size_t truncated_dimension(int truncation) {
  return manifold_offset(truncation + 1);
}

struct FockAmplitude {
  int N = 0;
  int n = 0;
  Complex amplitude;
};

struct PureAmplitudes {
  std::vector<FockAmplitude> entries;

  int truncation() const;
};

class ManifoldBlock {
 public:
  /// Weight defaults to the real part of the trace.
  ManifoldBlock(int n_photons, Matrix matrix);
  ManifoldBlock(int n_photons, Matrix matrix, double weight);

  int photons() const { return n_; }
  const Matrix& matrix() const { return matrix_; }
  double weight() const { return weight_; }

 private:
  int n_;
  Matrix matrix_;
  double weight_;
};

struct BlockDiagonal {
  std::vector<ManifoldBlock> blocks;
  /// Probability mass of manifolds removed because p_N < kDropWeight.
  double discarded_mass = 0.0;
};

/// Immutable two-mode state. Construction does not validate; every
/// operation that consumes a state checks it and throws InvalidState.
class TwoModeState {
 public:
  explicit TwoModeState(PureAmplitudes pure) : repr_(std::move(pure)) {}
  explicit TwoModeState(BlockDiagonal blocks) : repr_(std::move(blocks)) {}
  explicit TwoModeState(std::vector<ManifoldBlock> blocks)
      : repr_(BlockDiagonal{std::move(blocks), 0.0}) {}

  bool is_pure() const { return std::holds_alternative<PureAmplitudes>(repr_); }
  const PureAmplitudes& pure() const { return std::get<PureAmplitudes>(repr_); }
  const BlockDiagonal& block_diagonal() const { return std::get<BlockDiagonal>(repr_); }

  /// Largest photon number carried by the state.
  int truncation() const;

 private:
  std::variant<PureAmplitudes, BlockDiagonal> repr_;
};

struct UnpolarizedWeights {
  std::map<int, double> weights;

  double at(int n_photons) const {
    auto it = weights.find(n_photons);
    return it == weights.end() ? 0.0 : it->second;
  }
};

void check_weights(const UnpolarizedWeights& weights);

struct BlockDiagnostics {
  int N = 0;
  double weight = 0.0;
  bool dimension_ok = true;
  double hermiticity_defect = 0.0;  // max_ij |M - M^dagger|_ij / 2
  double min_eigenvalue = 0.0;
  double trace_defect = 0.0;        // |Tr M - p_N|
};

struct ValidationReport {
  bool pass = true;
  std::vector<BlockDiagnostics> blocks;
  double normalization_defect = 0.0;  // |sum_N p_N - 1|
  double discarded_mass = 0.0;
  std::vector<std::string> problems;

  std::string summary() const;
};

ValidationReport validate(const TwoModeState& state);

/// Throws InvalidState carrying the report summary when validation fails.
void require_valid(const TwoModeState& state);

/// The non-selective total-photon-number measurement: sum_N P_N rho P_N.
TwoModeState block_diagonalize(const TwoModeState& state);

std::map<int, double> manifold_probabilities(const TwoModeState& state);

/// Density matrix on manifolds 0..truncation, coherences included.
Matrix dense_density_matrix(const TwoModeState& state, int truncation);

/// The manifold-N block of a dense matrix.
Matrix manifold_block(const Matrix& dense, int n_photons);

/// Pure state whose manifold N carries |N, 0> with probability p_N.
TwoModeState horizontal_fock_superposition(const std::map<int, double>& distribution);

}  // namespace qpol
