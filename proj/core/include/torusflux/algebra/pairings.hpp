// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "torusflux/algebra/cohomology.hpp"
#include "torusflux/spectral/poisson.hpp"

namespace torusflux::algebra {

using spectral::PoissonTensor;
using spectral::TwoForm;

// Invariant pairing <[theta1], [theta2]> = integral of pi(theta1, theta2)
// over the torus (Lebesgue measure). Form arguments must be closed;
// the value depends only on their classes.
double pairing_mu(const PoissonTensor& pi, const spectral::OneForm& theta1,
                  const spectral::OneForm& theta2);
double pairing_mu(const PoissonTensor& pi, const CohomologyClass& c1,
                  const CohomologyClass& c2);

// Operator matrix of the pairing in the [dx_i] chart:
//   M_ij = <[dx_j], [dx_i]>,  so  <mu(c), [dx_i]> = (M c)_i.
// Equals the tensor's constant part.
Eigen::MatrixXd mu_matrix(const PoissonTensor& pi);

// Constant two-form from an antisymmetric matrix (component (i,j) of the
// form is omega_ij for i < j).
TwoForm constant_two_form(const Eigen::MatrixXd& omega);

// Symplectic pairing sigma([theta1], [theta2]) =
//   integral of theta1 ^ theta2 ^ omega^(m-1), dim = 2m,
// with orientation dx_1 ^ ... ^ dx_2m > 0. Requires even dimension and an
// invertible antisymmetric omega.
double pairing_sigma(const Eigen::MatrixXd& omega,
                     const spectral::OneForm& theta1,
                     const spectral::OneForm& theta2);
double pairing_sigma(const Eigen::MatrixXd& omega, const CohomologyClass& c1,
                     const CohomologyClass& c2);

// Matrix with the same index convention as mu_matrix:
//   S_ij = sigma([dx_j], [dx_i]).
Eigen::MatrixXd sigma_matrix(const Eigen::MatrixXd& omega);

}  // namespace torusflux::algebra
