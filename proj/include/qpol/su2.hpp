#pragma once

// Stokes operators and SU(2) polarization transformations, manifold by
// manifold. Basis ordering inside manifold N is n = 0..N for |n, N-n>.

#include "qpol/fock.hpp"

namespace qpol {

struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;
};

struct StokesBlock {
  int N = 0;
  Matrix S1;
  Matrix S2;
  Matrix S3;
};

/// S1 = a_H^dag a_V + h.c., S2 = -i (a_H^dag a_V - h.c.), S3 = n_H - n_V
/// restricted to manifold N.
StokesBlock stokes_block(int n_photons);

/// exp(-i phi S3/2) exp(-i theta S2/2) exp(-i psi S3/2) on manifold N.
Matrix polarization_unitary(int n_photons, const EulerAngles& angles);

/// Applies the polarization unitary manifold by manifold. Pure states stay
/// pure (amplitudes rotate), block-diagonal states rotate block by block.
TwoModeState transform_state(const TwoModeState& state, const EulerAngles& angles);

/// Block N is (pi_N / (N+1)) I.
TwoModeState unpolarized_state(const UnpolarizedWeights& weights);

}  // namespace qpol
