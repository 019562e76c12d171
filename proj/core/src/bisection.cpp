// SPDX-License-Identifier: Apache-2.0
#include "torusflux/groupoid/bisection.hpp"

#include "torusflux/algebra/cohomology.hpp"

namespace torusflux::groupoid {

Bisection::Bisection(GroupoidModel model, flows::MapLift psi,
                     spectral::OneForm theta, double gate)
    : model_(std::move(model)),
      psi_(std::move(psi)),
      theta_(std::move(theta)),
      gate_residual_(gate) {}

Bisection Bisection::from_lift(const GroupoidModel& model, flows::MapLift psi,
                               double tol) {
  if (model.kind() != ModelKind::SymplecticTorus)
    throw DimError("lift bisections live on the symplectic torus model");
  if (psi.dim() != model.dim())
    throw DimError("lift dimension does not match the model");
  const double r = flows::symplecto_residual(model.omega(), psi);
  if (!(r < tol))
    throw GateError("lagrangian gate failed: lift does not preserve omega", r);
  return Bisection(model, std::move(psi), {}, r);
}

Bisection Bisection::from_form(const GroupoidModel& model,
                               spectral::OneForm theta, double tol) {
  if (model.kind() != ModelKind::ZeroPoisson)
    throw DimError("one-form bisections live on the zero-Poisson model");
  if (static_cast<int>(theta.size()) != model.dim())
    throw DimError("one-form dimension does not match the model");
  for (const auto& c : theta)
    if (c.dim() != model.dim())
      throw DimError("one-form component dimension mismatch");
  const double r = algebra::closedness_residual(theta);
  if (!(r < tol)) throw NotClosedError("bisection one-form is not closed", r);
  return Bisection(model, flows::MapLift::identity(model.dim()),
                   std::move(theta), r);
}

Bisection Bisection::identity(const GroupoidModel& model) {
  if (model.kind() == ModelKind::SymplecticTorus)
    return from_lift(model, flows::MapLift::identity(model.dim()));
  spectral::OneForm zero(static_cast<std::size_t>(model.dim()),
                         spectral::TrigPoly::constant(model.dim(), 0.0));
  return from_form(model, std::move(zero));
}

const flows::MapLift& Bisection::lift() const {
  if (model_.kind() != ModelKind::SymplecticTorus)
    throw DimError("zero-Poisson bisections carry no lift");
  return psi_;
}

const spectral::OneForm& Bisection::form() const {
  if (model_.kind() != ModelKind::ZeroPoisson)
    throw DimError("symplectic-torus bisections carry no defining one-form");
  return theta_;
}

flows::MapLift ad(const GroupoidModel& model, const Bisection& l) {
  if (model.kind() == ModelKind::SymplecticTorus) return l.lift();
  return flows::MapLift::identity(model.dim());
}

Bisection compose_bisections(const GroupoidModel& model, const Bisection& l,
                             const Bisection& k) {
  if (l.dim() != model.dim() || k.dim() != model.dim())
    throw DimError("bisection dimension does not match the model");
  if (model.kind() == ModelKind::SymplecticTorus)
    return Bisection::from_lift(model, flows::compose(l.lift(), k.lift()));
  return Bisection::from_form(model, l.form() + k.form());
}

Bisection inverse_bisection(const GroupoidModel& model, const Bisection& l) {
  if (model.kind() == ModelKind::SymplecticTorus)
    return Bisection::from_lift(model, flows::inverse(l.lift()));
  return Bisection::from_form(model, l.form() * -1.0);
}

}  // namespace torusflux::groupoid
