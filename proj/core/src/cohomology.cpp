// SPDX-License-Identifier: Apache-2.0
#include "torusflux/algebra/cohomology.hpp"

#include <cmath>

namespace torusflux::algebra {

using spectral::d;
using spectral::sup_bound;
using spectral::zero_modes;

double closedness_residual(const OneForm& theta) { return sup_bound(d(theta)); }

CohomologyClass cohomology_class(const OneForm& theta, double tol) {
  const double r = closedness_residual(theta);
  if (r > tol)
    throw NotClosedError("one-form is not closed: ||d theta|| = " +
                             std::to_string(r),
                         r);
  const std::vector<double> m = zero_modes(theta);
  CohomologyClass c;
  c.coeffs = Eigen::Map<const Eigen::VectorXd>(m.data(),
                                               static_cast<long>(m.size()));
  return c;
}

double exactness_residual(const OneForm& theta) {
  double r = 0.0;
  for (double m : zero_modes(theta)) r = std::max(r, std::abs(m));
  return r;
}

}  // namespace torusflux::algebra
