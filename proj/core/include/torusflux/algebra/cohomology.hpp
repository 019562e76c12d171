// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "torusflux/spectral/forms.hpp"

namespace torusflux::algebra {

using spectral::OneForm;

// First-cohomology class on T^n in the fixed basis [dx_1], ..., [dx_n].
struct CohomologyClass {
  Eigen::VectorXd coeffs;

  int dim() const { return static_cast<int>(coeffs.size()); }
  bool operator==(const CohomologyClass&) const = default;
};

// Coefficient-l1 bound on d(theta); zero iff theta is closed.
double closedness_residual(const OneForm& theta);

// The class of a closed one-form: the zero modes of its components.
// Throws NotClosedError (carrying the residual) above tol.
CohomologyClass cohomology_class(const OneForm& theta,
                                 double tol = kClosedTol);

// How far a closed form is from being exact: max |class coefficient|.
double exactness_residual(const OneForm& theta);

}  // namespace torusflux::algebra
