#include "qpol/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "qpol/minimize.hpp"
#include "qpol/su2.hpp"

namespace qpol {

namespace {

void check_s(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError(fmt::format("s = {} outside [0, 1]", s));
}

void check_nonempty(const SpectralData& spec) {
  if (spec.manifolds.empty()) throw InvalidState("state has no manifold with positive weight");
}

double log_sum_exp(const std::vector<double>& terms) {
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

// log[p_N (xi_N^(s))^(1/s) (N+1)^(1-1/s)] for every stored manifold.
std::vector<double> log_weight_terms(const SpectralData& spec, double s) {
  std::vector<double> terms;
  terms.reserve(spec.manifolds.size());
  const double inv_s = 1.0 / s;
  for (const auto& m : spec.manifolds) {
    const double log_dim = std::log(static_cast<double>(m.N + 1));
    terms.push_back(std::log(m.weight) + log_dim + inv_s * (std::log(xi(m, s)) - log_dim));
  }
  return terms;
}

}  // namespace

double renyi_overlap_unpolarized(const SpectralData& spec, const UnpolarizedWeights& weights, double s) {
  check_s(s);
  check_weights(weights);
  double q = 0.0;
  for (const auto& m : spec.manifolds) {
    const double pi = weights.at(m.N);
    if (pi <= 0.0 || m.weight <= 0.0) continue;
    q += std::pow(m.weight, s) * xi(m, s) * std::pow(pi / (m.N + 1), 1.0 - s);
  }
  return q;
}

UnpolarizedWeights optimal_weights(const SpectralData& spec, double s) {
  check_s(s);
  if (s == 0.0) throw DomainError("optimal_weights needs s > 0; use optimal_weights_at_zero");
  check_nonempty(spec);
  const std::vector<double> terms = log_weight_terms(spec, s);
  const double norm = log_sum_exp(terms);
  UnpolarizedWeights out;
  for (std::size_t k = 0; k < terms.size(); ++k)
    out.weights[spec.manifolds[k].N] = std::exp(terms[k] - norm);
  return out;
}

ZeroLimit optimal_weights_at_zero(const SpectralData& spec) {
  check_nonempty(spec);
  const ManifoldSpectrum* best = &spec.manifolds.front();
  for (const auto& m : spec.manifolds) {
    // nu_m / (N_m+1) > nu_b / (N_b+1), compared in integers
    if (static_cast<long>(m.rank) * (best->N + 1) > static_cast<long>(best->rank) * (m.N + 1)) best = &m;
  }
  ZeroLimit out;
  out.photons = best->N;
  out.overlap = static_cast<double>(best->rank) / (best->N + 1);
  out.weights.weights[best->N] = 1.0;
  return out;
}

double max_overlap(const SpectralData& spec, double s) {
  check_s(s);
  if (s == 0.0) return optimal_weights_at_zero(spec).overlap;
  return std::exp(s * log_sum_exp(log_weight_terms(spec, s)));
}

TwoModeState closest_unpolarized_state(const SpectralData& spec, double s) {
  check_s(s);
  return unpolarized_state(s == 0.0 ? optimal_weights_at_zero(spec).weights : optimal_weights(spec, s));
}

ChernoffResult chernoff_degree(const SpectralData& spec) {
  check_nonempty(spec);
  const ZeroLimit zero = optimal_weights_at_zero(spec);
  const OverlapMinimum m =
      minimize_overlap_curve([&](double s) { return max_overlap(spec, s); }, zero.overlap);
  ChernoffResult out;
  out.s_opt = m.s;
  out.overlap = m.value;
  out.degree = 1.0 - m.value;
  out.boundary_case = m.at_boundary;
  out.optimal_weights = m.at_boundary ? zero.weights : optimal_weights(spec, m.s);
  return out;
}

ChernoffResult chernoff_degree(const TwoModeState& state) { return chernoff_degree(spectra(state)); }

BuresResult bures_degree(const SpectralData& spec) {
  check_nonempty(spec);
  std::vector<double> terms;
  double fidelity = 0.0;
  for (const auto& m : spec.manifolds) {
    const double x = xi(m, 0.5);
    terms.push_back(m.weight / (m.N + 1) * x * x);
    fidelity += terms.back();
  }
  BuresResult out;
  out.fidelity = fidelity;
  out.degree = 1.0 - std::sqrt(fidelity);
  for (std::size_t k = 0; k < terms.size(); ++k)
    out.optimal_weights.weights[spec.manifolds[k].N] = terms[k] / fidelity;
  return out;
}

BuresResult bures_degree(const TwoModeState& state) { return bures_degree(spectra(state)); }

namespace {

// Eigenvalues at or below this fraction of the largest are treated as zero;
// sits well above eigensolver noise (~1e-16) so it never masks real weight.
constexpr double kSupport = 1e-13;

void check_density_matrix(const Matrix& m, const char* name) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionMismatch(fmt::format("{} is {}x{}, expected a square matrix", name, m.rows(), m.cols()));
  const double herm = ((m - m.adjoint()) / 2.0).cwiseAbs().maxCoeff();
  if (herm > tol::kHermitian)
    throw InvalidState(fmt::format("{}: hermiticity defect {:.6e}", name, herm));
  const double trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_defect > tol::kNormalization)
    throw InvalidState(fmt::format("{}: trace defect {:.6e}", name, trace_defect));
}

struct Spectrum {
  Eigen::VectorXd values;
  Matrix vectors;
};

Spectrum support_spectrum(const Matrix& m, const char* name) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) / 2.0);
  Spectrum out{solver.eigenvalues(), solver.eigenvectors()};
  if (out.values.minCoeff() < -tol::kPsd)
    throw InvalidState(fmt::format("{}: negative eigenvalue {:.6e}", name, out.values.minCoeff()));
  const double cutoff = kSupport * out.values.maxCoeff();
  for (auto& v : out.values)
    if (v <= cutoff) v = 0.0;
  return out;
}

// Q_s = sum_ij a_i^s b_j^(1-s) |<e_i|f_j>|^2 over the supports.
class RenyiPair {
 public:
  RenyiPair(const Matrix& rho, const Matrix& sigma) {
    check_density_matrix(rho, "rho");
    check_density_matrix(sigma, "sigma");
    if (rho.rows() != sigma.rows())
      throw DimensionMismatch(fmt::format("rho is {}x{} but sigma is {}x{}", rho.rows(), rho.cols(),
                                          sigma.rows(), sigma.cols()));
    a_ = support_spectrum(rho, "rho");
    b_ = support_spectrum(sigma, "sigma");
    overlaps_ = (a_.vectors.adjoint() * b_.vectors).cwiseAbs2();
  }

  double operator()(double s) const {
    check_s(s);
    double q = 0.0;
    for (Eigen::Index i = 0; i < a_.values.size(); ++i) {
      if (a_.values(i) <= 0.0) continue;
      const double ai = std::pow(a_.values(i), s);
      for (Eigen::Index j = 0; j < b_.values.size(); ++j) {
        if (b_.values(j) <= 0.0) continue;
        q += ai * std::pow(b_.values(j), 1.0 - s) * overlaps_(i, j);
      }
    }
    return q;
  }

 private:
  Spectrum a_;
  Spectrum b_;
  Eigen::MatrixXd overlaps_;
};

}  // namespace

double general_renyi_overlap(const Matrix& rho, const Matrix& sigma, double s) {
  check_s(s);
  return RenyiPair(rho, sigma)(s);
}

GeneralChernoff chernoff_overlap_general(const Matrix& rho, const Matrix& sigma) {
  const RenyiPair pair(rho, sigma);
  const ScalarMinimum m = scan_then_refine([&](double s) { return pair(s); }, 0.0, 1.0);
  GeneralChernoff out;
  out.overlap = m.value;
  out.s_opt = m.x;
  out.exponent = m.value > 0.0 ? -std::log(m.value) : std::numeric_limits<double>::infinity();
  return out;
}

double single_copy_error_probability(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatch(fmt::format("rho is {}x{} but sigma is {}x{}", rho.rows(), rho.cols(),
                                        sigma.rows(), sigma.cols()));
  const Matrix diff = rho - sigma;
  Eigen::SelfAdjointEigenSolver<Matrix> solver((diff + diff.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  const double trace_norm = solver.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, 0.5 * (1.0 - 0.5 * trace_norm));
}

}  // namespace qpol
