// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "torusflux/algebra/cohomology.hpp"
#include "torusflux/groupoid/bisection.hpp"

namespace torusflux::groupoid {

// A parametrized loop s in [0,1] -> torus, reported with its derivative.
struct LoopPoint {
  std::vector<double> x;
  std::vector<double> dx;
};
using LoopSampler = std::function<LoopPoint(double)>;

// Holonomy of the prequantum connection around the image of a base loop
// under the bisection. The connection primitive is theta_conn = (Omega p).dx,
// the unique translation-invariant primitive of alpha*omega - beta*omega
// that vanishes on the identity space (so the identity bisection has no
// holonomy). The value is the line integral of theta_conn along s ->
// L(gamma(s)) mod 1, reduced to [-1/2, 1/2); quadrature is the trapezoid
// rule with `quad` nodes (spectrally accurate on these periodic integrands).
double holonomy_phi(const GroupoidModel& model, const Bisection& l,
                    const std::vector<int>& winding,
                    std::span<const double> base = {}, int quad = 512);

// Same integral along an arbitrary loop (used for transported loops
// Ad_K(gamma) in the cocycle identity and for homotopy-invariance checks).
double holonomy_phi_loop(const GroupoidModel& model, const Bisection& l,
                         const LoopSampler& loop, int quad = 512);

// The straight loop base + s w, transported through the diffeomorphism
// psi: s -> psi(base + s w), with the exact transported derivative.
LoopSampler transported_loop(const flows::MapLift& psi,
                             const std::vector<int>& winding,
                             std::span<const double> base = {});

// Pairing of a cohomology class with a winding vector, mod 1 in [-1/2, 1/2).
double rho(const algebra::CohomologyClass& c, const std::vector<int>& winding);

// Distance on the circle R/Z.
double circle_dist(double a, double b);

// Reduce to the fundamental window [-1/2, 1/2).
double circle_wrap(double a);

}  // namespace torusflux::groupoid
