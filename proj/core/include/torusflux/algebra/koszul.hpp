// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "torusflux/spectral/poisson.hpp"

namespace torusflux::algebra {

using spectral::OneForm;
using spectral::PoissonTensor;
using spectral::TrigPoly;

// Bracket on one-forms induced by the tensor:
//   [omega, theta] = L_{X_omega} theta - L_{X_theta} omega - d(pi(omega, theta)),
// X_eta = sharp(pi, eta). The tensor must pass the Jacobi admission gate.
OneForm koszul_bracket(const PoissonTensor& pi, const OneForm& omega,
                       const OneForm& theta);

// Section (zeta, f) of T*P (+) (P x R).
struct ExtElement {
  OneForm zeta;
  TrigPoly f;
};

// [(zeta, f), (eta, g)] =
//   ([zeta, eta], X_zeta(g) - X_eta(f) + pi(zeta, eta)).
ExtElement central_ext_bracket(const PoissonTensor& pi, const ExtElement& a,
                               const ExtElement& b);

// Residuals for the chain  0 -> R -> C^inf -> Z^1 -> H^1 -> 0
// probed on deterministic pseudo-random band-limited samples.
struct ExactSequenceReport {
  double ker_d_residual = 0.0;        // d(constant) = 0
  double class_of_exact_residual = 0.0;  // class(df) = 0
  double basis_realized_residual = 0.0;  // class(dx_i rep) hits each e_i
  double bracket_exactness_residual = 0.0;  // [Z^1, Z^1] lands in B^1
  double max_residual() const;
};

ExactSequenceReport exact_sequence_report(const PoissonTensor& pi,
                                          int samples = 8,
                                          unsigned seed = 12345);

}  // namespace torusflux::algebra
