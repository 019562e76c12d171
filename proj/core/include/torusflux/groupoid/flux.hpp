// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>

#include "torusflux/algebra/cohomology.hpp"
#include "torusflux/flows/isotopy.hpp"
#include "torusflux/groupoid/bisection.hpp"

namespace torusflux::groupoid {

struct FluxOptions {
  int steps = kDefaultTimeSteps;  // quadrature subintervals, multiple of 4
  double closed_tol = kGridTol;   // gate on ||d theta_t|| at every sample
  double quad_tol = 1e-6;         // step-halving disagreement gate
};

struct FluxResult {
  algebra::CohomologyClass value;
  double max_closedness = 0.0;  // worst ||d theta_t|| seen
  double max_aliasing = 0.0;    // worst grid-projection residual seen
  double quad_check = 0.0;      // Simpson vs half-resolution disagreement
};

// The closed one-form theta_t with X_t contracted into omega and pulled to
// the base: components (theta_t)_j = sum_i Z_t^i Omega_ij where Z_t is the
// instantaneous base velocity (d/dt psi_t) o psi_t^{-1}. Families that know
// their velocity in closed form are evaluated exactly; otherwise psi_t is
// differenced in time on the family's node grid and inverted numerically.
// Closedness below `closed_tol` is asserted (NotClosedError).
spectral::OneForm theta_t(const GroupoidModel& model,
                          const flows::Isotopy& iso, double t,
                          double closed_tol = kGridTol,
                          double* aliasing = nullptr);

// Time integral of [theta_t] over [0, 1] by composite Simpson quadrature,
// split at the family's velocity breakpoints; the step-halved value must
// agree to quad_tol (NumericalError otherwise). The family must start at
// the identity.
FluxResult flux(const GroupoidModel& model, const flows::Isotopy& iso,
                const FluxOptions& opts = {});

// Same integral stopped at time T in [0, 1].
FluxResult flux_prefix(const GroupoidModel& model, const flows::Isotopy& iso,
                       double T, const FluxOptions& opts = {});

// The path of lagrangian bisections generated by a closed one-form: the
// lift family is the flow of pi#(theta). Its flux prefix at T is T[theta]
// by construction (asserted in tests, not here). Constant theta yields the
// exact translation family.
std::unique_ptr<flows::Isotopy> exp_bisection_path(
    const spectral::OneForm& theta, const GroupoidModel& model,
    int steps = kDefaultTimeSteps);

struct ExactnessReport {
  std::vector<double> times;  // prefix endpoints T on a uniform grid
  std::vector<algebra::CohomologyClass> prefix_fluxes;
  std::vector<double> prefix_norms;  // max-abs coordinates of each prefix
  bool hamiltonian_path = false;     // all prefixes below tol
  double tol = 0.0;
  // Endpoint holonomy around each generator loop; near 0 mod 1 iff the
  // endpoint is reachable by an exact path.
  std::vector<double> endpoint_holonomy;
};

// Prefix-flux criterion for hamiltonian paths: the family is hamiltonian
// iff every prefix flux vanishes. Also reports the endpoint bisection's
// holonomy around the generator loops.
ExactnessReport exactness_verdict(const GroupoidModel& model,
                                  const flows::Isotopy& iso,
                                  double tol = kGridTol, int grid = 10,
                                  const FluxOptions& opts = {});

}  // namespace torusflux::groupoid
