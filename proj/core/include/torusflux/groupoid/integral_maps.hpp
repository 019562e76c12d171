// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "torusflux/algebra/cohomology.hpp"
#include "torusflux/groupoid/bisection.hpp"

namespace torusflux::groupoid {

// A groupoid 1-cocycle in the chart J(x,p) = linear . p + H(alpha(x,p)) -
// H(beta(x,p)); the coboundary part H contributes nothing to the pairing
// with any bisection (measure invariance), which is what tests probe.
struct GroupoidCocycle {
  Eigen::VectorXd linear;
  spectral::TrigPoly boundary_h;
};

// <epsilon(L), [J_i]> = integral of p_i over L = -(mean of u_i); exact
// coefficients of the lift. SymplecticTorus only.
Eigen::VectorXd epsilon(const GroupoidModel& model, const Bisection& l);

// Pairing of epsilon(L) with an arbitrary cocycle, by grid quadrature of
// J(L(x)); grid = 0 resolves the integrand's bandwidth.
double epsilon_pairing(const GroupoidModel& model, const Bisection& l,
                       const GroupoidCocycle& j, int grid = 0);

// Coordinates of lambda(L) against [dx_i]: +(mean of u_i). The sign
// relative to epsilon is the frozen chart convention that makes
// mu^{-1} lambda agree with the time-integral flux.
Eigen::VectorXd lambda_map(const GroupoidModel& model, const Bisection& l);

// Endpoint-only flux: solve mu F = lambda(L). Needs an invertible pairing
// (NumericalError on the zero-Poisson model).
algebra::CohomologyClass flux_via_lambda(const GroupoidModel& model,
                                         const Bisection& l);

}  // namespace torusflux::groupoid
