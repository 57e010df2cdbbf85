#pragma once

// Chernoff and Bures degrees of polarization.
//
// For a block-diagonal state with manifold weights p_N and normalized block
// spectra lambda_{N,n}, the Renyi overlap against an unpolarized state with
// weights pi_N is
//
//   Q_s = sum_N p_N^s xi_N^(s) (pi_N / (N+1))^(1-s),
//
// maximized over pi by
//
//   pi_N^(s) ~ p_N (xi_N^(s))^(1/s) (N+1)^(1-1/s),
//   max_pi Q_s = [sum_N p_N (N+1) (xi_N^(s) / (N+1))^(1/s)]^s,   0 < s <= 1,
//
// with the s -> 0 limit max_N nu_N / (N+1) attained by the uniform state on
// the maximizing manifold. The Chernoff degree is 1 - min_s max_pi Q_s and
// the Bures degree is 1 - sqrt(max_pi Q_{1/2}).

#include <utility>

#include "qpol/fock.hpp"
#include "qpol/spectral.hpp"

namespace qpol {

struct ChernoffResult {
  double s_opt = 0.0;
  double overlap = 1.0;
  double degree = 0.0;
  UnpolarizedWeights optimal_weights;
  /// Minimum attained at the s = 0 endpoint.
  bool boundary_case = false;
};

struct BuresResult {
  double degree = 0.0;
  double fidelity = 1.0;
  UnpolarizedWeights optimal_weights;
};

double renyi_overlap_unpolarized(const SpectralData& spec, const UnpolarizedWeights& weights, double s);

/// Weights of the closest unpolarized state at s > 0 (log-domain softmax).
UnpolarizedWeights optimal_weights(const SpectralData& spec, double s);

struct ZeroLimit {
  UnpolarizedWeights weights;  // delta at the maximizing manifold
  double overlap = 0.0;        // nu / (N+1) there
  int photons = 0;
};

/// argmax_N nu_N / (N+1); ties go to the smaller N.
ZeroLimit optimal_weights_at_zero(const SpectralData& spec);

/// max over unpolarized states of Q_s, for s in [0, 1].
double max_overlap(const SpectralData& spec, double s);

/// sigma~(s) as a state: optimal_weights for s > 0, the delta weights at s = 0.
TwoModeState closest_unpolarized_state(const SpectralData& spec, double s);

ChernoffResult chernoff_degree(const SpectralData& spec);
ChernoffResult chernoff_degree(const TwoModeState& state);

BuresResult bures_degree(const SpectralData& spec);
BuresResult bures_degree(const TwoModeState& state);

/// Tr(rho^s sigma^(1-s)) for arbitrary density matrices of equal size.
double general_renyi_overlap(const Matrix& rho, const Matrix& sigma, double s);

struct GeneralChernoff {
  double overlap = 1.0;   // min_s Tr(rho^s sigma^(1-s))
  double s_opt = 0.0;
  double exponent = 0.0;  // -ln overlap
};

GeneralChernoff chernoff_overlap_general(const Matrix& rho, const Matrix& sigma);

/// Helstrom error for one copy and equal priors: (1 - ||rho - sigma||_1 / 2) / 2.
double single_copy_error_probability(const Matrix& rho, const Matrix& sigma);

}  // namespace qpol
