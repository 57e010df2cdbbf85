#include "qpol/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include <fmt/format.h>

namespace qpol {

int PureAmplitudes::truncation() const {
  int max_n = 0;
  for (const auto& e : entries) max_n = std::max(max_n, e.N);
  return max_n;
}

ManifoldBlock::ManifoldBlock(int n_photons, Matrix matrix)
    : n_(n_photons), matrix_(std::move(matrix)), weight_(matrix_.trace().real()) {}

ManifoldBlock::ManifoldBlock(int n_photons, Matrix matrix, double weight)
    : n_(n_photons), matrix_(std::move(matrix)), weight_(weight) {}

int TwoModeState::truncation() const {
  if (is_pure()) return pure().truncation();
  int max_n = 0;
  for (const auto& b : block_diagonal().blocks) max_n = std::max(max_n, b.photons());
  return max_n;
}

void check_weights(const UnpolarizedWeights& weights) {
  double total = 0.0;
  for (const auto& [n, w] : weights.weights) {
    if (n < 0) throw InvalidState(fmt::format("unpolarized weight for negative photon number {}", n));
    if (!(w >= 0.0 && w <= 1.0))
      throw InvalidState(fmt::format("unpolarized weight pi_{} = {} outside [0, 1]", n, w));
    total += w;
  }
  if (std::abs(total - 1.0) > tol::kNormalization)
    throw InvalidState(fmt::format("unpolarized weights sum to {:.12g}", total));
}

std::string ValidationReport::summary() const {
  if (pass) return "state valid";
  std::string out;
  for (const auto& p : problems) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

namespace {

BlockDiagnostics diagnose_block(const ManifoldBlock& block) {
  BlockDiagnostics d;
  d.N = block.photons();
  d.weight = block.weight();
  const auto dim = static_cast<Eigen::Index>(block.photons() + 1);
  const Matrix& m = block.matrix();
  if (block.photons() < 0 || m.rows() != dim || m.cols() != dim) {
    d.dimension_ok = false;
    return d;
  }
  const Matrix anti = (m - m.adjoint()) / 2.0;
  d.hermiticity_defect = anti.cwiseAbs().maxCoeff();
  const Matrix herm = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = solver.eigenvalues().minCoeff();
  d.trace_defect = std::abs(m.trace() - Complex(block.weight(), 0.0));
  return d;
}

void validate_pure(const PureAmplitudes& pure, ValidationReport& report) {
  std::set<std::pair<int, int>> seen;
  double norm = 0.0;
  for (const auto& e : pure.entries) {
    if (e.N < 0 || e.n < 0 || e.n > e.N) {
      report.problems.push_back(fmt::format("amplitude index (N={}, n={}) out of range", e.N, e.n));
      continue;
    }
    if (!seen.insert({e.N, e.n}).second)
      report.problems.push_back(fmt::format("duplicate amplitude (N={}, n={})", e.N, e.n));
    if (!std::isfinite(e.amplitude.real()) || !std::isfinite(e.amplitude.imag()))
      report.problems.push_back(fmt::format("non-finite amplitude (N={}, n={})", e.N, e.n));
    norm += std::norm(e.amplitude);
  }
  report.normalization_defect = std::abs(norm - 1.0);
  if (report.normalization_defect > tol::kNormalization)
    report.problems.push_back(
        fmt::format("norm defect {:.6e} (sum |c|^2 = {:.12g})", report.normalization_defect, norm));
}

void validate_blocks(const BlockDiagonal& bd, ValidationReport& report) {
  report.discarded_mass = bd.discarded_mass;
  double total = 0.0;
  int previous = -1;
  for (const auto& block : bd.blocks) {
    if (block.photons() <= previous)
      report.problems.push_back(fmt::format("block N={} out of order or duplicated", block.photons()));
    previous = std::max(previous, block.photons());
    BlockDiagnostics d = diagnose_block(block);
    total += block.weight();
    if (!d.dimension_ok) {
      report.problems.push_back(fmt::format("block N={}: matrix is {}x{}, expected {}x{}", d.N,
                                            block.matrix().rows(), block.matrix().cols(), d.N + 1,
                                            d.N + 1));
    } else {
      if (!block.matrix().allFinite())
        report.problems.push_back(fmt::format("block N={}: non-finite entries", d.N));
      if (d.hermiticity_defect > tol::kHermitian)
        report.problems.push_back(
            fmt::format("block N={}: hermiticity defect {:.6e}", d.N, d.hermiticity_defect));
      if (d.min_eigenvalue < -tol::kPsd)
        report.problems.push_back(
            fmt::format("block N={}: negative eigenvalue {:.6e}", d.N, d.min_eigenvalue));
      if (d.trace_defect > tol::kBlockTrace)
        report.problems.push_back(fmt::format("block N={}: trace defect {:.6e}", d.N, d.trace_defect));
    }
    if (!(block.weight() >= 0.0 && block.weight() <= 1.0 + tol::kNormalization))
      report.problems.push_back(fmt::format("block N={}: weight {} outside [0, 1]", d.N, block.weight()));
    report.blocks.push_back(d);
  }
  report.normalization_defect = std::abs(total - 1.0);
  if (report.normalization_defect > tol::kNormalization) {
    std::string names;
    for (const auto& b : bd.blocks) names += (names.empty() ? "N=" : ",") + std::to_string(b.photons());
    report.problems.push_back(fmt::format("blocks {}: total trace defect {:.6e} (sum of traces {:.12g})",
                                          names.empty() ? "<none>" : names,
                                          report.normalization_defect, total));
  }
}

}  // namespace

ValidationReport validate(const TwoModeState& state) {
  ValidationReport report;
  if (state.is_pure())
    validate_pure(state.pure(), report);
  else
    validate_blocks(state.block_diagonal(), report);
  report.pass = report.problems.empty();
  return report;
}

void require_valid(const TwoModeState& state) {
  ValidationReport report = validate(state);
  if (!report.pass) throw InvalidState(report.summary());
}

namespace {

std::map<int, Vector> manifold_vectors(const PureAmplitudes& pure) {
  std::map<int, Vector> out;
  for (const auto& e : pure.entries) {
    auto [it, inserted] = out.try_emplace(e.N, Vector::Zero(e.N + 1));
    it->second(e.n) += e.amplitude;
  }
  return out;
}

}  // namespace

TwoModeState block_diagonalize(const TwoModeState& state) {
  require_valid(state);
  BlockDiagonal out;
  if (state.is_pure()) {
    for (auto& [n, c] : manifold_vectors(state.pure())) {
      const double p = c.squaredNorm();
      if (p < tol::kDropWeight) {
        out.discarded_mass += p;
        continue;
      }
      out.blocks.emplace_back(n, Matrix(c * c.adjoint()), p);
    }
    return TwoModeState(std::move(out));
  }
  const BlockDiagonal& in = state.block_diagonal();
  out.discarded_mass = in.discarded_mass;
  for (const auto& block : in.blocks) {
    if (block.weight() < tol::kDropWeight) {
      out.discarded_mass += block.weight();
      continue;
    }
    out.blocks.push_back(block);
  }
  return TwoModeState(std::move(out));
}

std::map<int, double> manifold_probabilities(const TwoModeState& state) {
  require_valid(state);
  std::map<int, double> probs;
  if (state.is_pure()) {
    for (const auto& e : state.pure().entries) probs[e.N] += std::norm(e.amplitude);
  } else {
    for (const auto& b : state.block_diagonal().blocks) probs[b.photons()] = b.weight();
  }
  return probs;
}

Matrix dense_density_matrix(const TwoModeState& state, int truncation) {
  if (truncation < state.truncation())
    throw DimensionMismatch(fmt::format("state carries N={} beyond truncation {}", state.truncation(),
                                        truncation));
  const auto dim = static_cast<Eigen::Index>(truncated_dimension(truncation));
  if (state.is_pure()) {
    Vector psi = Vector::Zero(dim);
    for (const auto& e : state.pure().entries)
      psi(static_cast<Eigen::Index>(manifold_offset(e.N)) + e.n) += e.amplitude;
    return psi * psi.adjoint();
  }
  Matrix rho = Matrix::Zero(dim, dim);
  for (const auto& b : state.block_diagonal().blocks) {
    const auto off = static_cast<Eigen::Index>(manifold_offset(b.photons()));
    rho.block(off, off, b.photons() + 1, b.photons() + 1) = b.matrix();
  }
  return rho;
}

Matrix manifold_block(const Matrix& dense, int n_photons) {
  const auto off = static_cast<Eigen::Index>(manifold_offset(n_photons));
  if (off + n_photons + 1 > dense.rows())
    throw DimensionMismatch(fmt::format("manifold N={} not inside a {}x{} matrix", n_photons, dense.rows(),
                                        dense.cols()));
  return dense.block(off, off, n_photons + 1, n_photons + 1);
}

TwoModeState horizontal_fock_superposition(const std::map<int, double>& distribution) {
  PureAmplitudes pure;
  for (const auto& [n, p] : distribution) {
    if (p < 0.0) throw DomainError(fmt::format("negative probability p_{} = {}", n, p));
    if (p == 0.0) continue;
    pure.entries.push_back({n, n, Complex(std::sqrt(p), 0.0)});
  }
  return TwoModeState(std::move(pure));
}

}  // namespace qpol
