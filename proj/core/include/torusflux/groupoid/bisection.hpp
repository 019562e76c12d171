// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "torusflux/flows/maplift.hpp"
#include "torusflux/groupoid/model.hpp"

namespace torusflux::groupoid {

// A lagrangian bisection, restricted to the identity mapping-class sector.
//
// SymplecticTorus: carried by its lift psi = id + u, realizing the
// submanifold L = {(x + u(x)/2 mod Z, -u(x))}; beta o L = id by
// construction and alpha o L = psi mod Z. Admission gate: psi preserves
// omega (that is exactly the lagrangian condition for the graph).
//
// ZeroPoisson: carried by a closed one-form (its graph in the cotangent
// bundle); gate is closedness.
class Bisection {
 public:
  static Bisection from_lift(const GroupoidModel& model, flows::MapLift psi,
                             double tol = kGridTol);
  static Bisection from_form(const GroupoidModel& model,
                             spectral::OneForm theta, double tol = kClosedTol);
  static Bisection identity(const GroupoidModel& model);

  const GroupoidModel& model() const { return model_; }
  int dim() const { return model_.dim(); }
  // Lift psi = id + u; SymplecticTorus only.
  const flows::MapLift& lift() const;
  // Defining closed one-form; ZeroPoisson only.
  const spectral::OneForm& form() const;
  // Measured residual of the admission gate that this bisection passed.
  double gate_residual() const { return gate_residual_; }

 private:
  Bisection(GroupoidModel model, flows::MapLift psi, spectral::OneForm theta,
            double gate);
  GroupoidModel model_;
  flows::MapLift psi_;
  spectral::OneForm theta_;
  double gate_residual_;
};

// The Poisson diffeomorphism x -> alpha(L(x)) induced on the base; the
// lift psi for SymplecticTorus, the identity for ZeroPoisson.
flows::MapLift ad(const GroupoidModel& model, const Bisection& l);

// Product bisection LK: lift psi_L o psi_K on the torus model, addition of
// the one-forms on the zero-Poisson model.
Bisection compose_bisections(const GroupoidModel& model, const Bisection& l,
                             const Bisection& k);

Bisection inverse_bisection(const GroupoidModel& model, const Bisection& l);

}  // namespace torusflux::groupoid
