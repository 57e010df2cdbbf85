#pragma once

// Closed forms for two-manifold state families.
//
// Superposition: |Psi> = sqrt(p)|Psi^(N1)> + sqrt(1-p)|Psi^(N2)>, N1 < N2,
// any N-photon pure components.
// Mixture: tau = p rho_1 + (1-p) rho_2 with Fock-diagonal blocks
// diag(alpha, 1-alpha) and diag(beta, gamma, 1-beta-gamma).

#include <map>
#include <utility>

#include "qpol/fock.hpp"
#include "qpol/polarization.hpp"

namespace qpol {

struct SuperpositionFamily {
  int n1 = 1;
  int n2 = 2;
  double p = 0.5;
};

struct MixtureFamily {
  double p = 0.5;
  double alpha = 0.5;
  double beta = 1.0 / 3.0;
  double gamma = 1.0 / 3.0;
};

void check_family(const SuperpositionFamily& fam);
void check_family(const MixtureFamily& fam);

/// Q_s(p, pi1) against the unpolarized state with weights (pi1, 1 - pi1) on (N1, N2).
double superposition_renyi(const SuperpositionFamily& fam, double s, double pi1);

/// [1 + ((1-p)/p) ((N1+1)/(N2+1))^(1/s - 1)]^(-1), for 0 < s <= 1.
double superposition_optimal_pi1(const SuperpositionFamily& fam, double s);

/// [p (N1+1)^(1-1/s) + (1-p) (N2+1)^(1-1/s)]^s, for 0 < s <= 1.
double superposition_max_overlap(const SuperpositionFamily& fam, double s);

/// Left-hand side of the stationarity condition d/ds max_overlap = 0, scaled
/// so that it vanishes at an interior minimizer.
double superposition_stationarity_residual(const SuperpositionFamily& fam, double s);

ChernoffResult superposition_chernoff(const SuperpositionFamily& fam);

/// 1 - sqrt(p/(N1+1) + (1-p)/(N2+1)).
double superposition_bures(const SuperpositionFamily& fam);

/// Representative pure state using |N, 0> in each manifold.
TwoModeState superposition_state(const SuperpositionFamily& fam);

double mixture_renyi(const MixtureFamily& fam, double s, double pi1);

std::pair<ChernoffResult, BuresResult> mixture_degrees(const MixtureFamily& fam);

TwoModeState mixture_state(const MixtureFamily& fam);

struct PureDegrees {
  double chernoff = 0.0;
  double bures = 0.0;
};

/// Degrees of any state whose manifold blocks are all pure; they depend on
/// the photon-number distribution alone.
PureDegrees pure_state_degrees(const std::map<int, double>& distribution);

}  // namespace qpol
