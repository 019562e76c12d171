// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "torusflux/flows/advect.hpp"
#include "torusflux/flows/maplift.hpp"

namespace torusflux::flows {

using spectral::VectorField;

// A path t in [0,1] of lattice-periodic lifts. psi_0 need not be the
// identity (second legs of concatenations start elsewhere); constructors of
// from-identity kinds guarantee it.
class Isotopy {
 public:
  virtual ~Isotopy() = default;
  virtual int dim() const = 0;
  virtual MapLift lift_at(double t) const = 0;
  // Exact Eulerian velocity Z_t = (d/dt psi_t) o psi_t^{-1} when the family
  // admits one in closed form; generic kinds return nullopt and callers fall
  // back to finite differencing of the lifts.
  virtual std::optional<VectorField> eulerian(double t) const;
  // Interior times where the velocity may jump (quadratures split here).
  virtual std::vector<double> breakpoints() const { return {}; }
  virtual std::unique_ptr<Isotopy> clone() const = 0;

 protected:
  static void check_t(double t);
};

// psi_t = x + t c.
class TranslationIsotopy final : public Isotopy {
 public:
  explicit TranslationIsotopy(std::vector<double> c);
  int dim() const override { return static_cast<int>(c_.size()); }
  MapLift lift_at(double t) const override;
  std::optional<VectorField> eulerian(double t) const override;
  std::unique_ptr<Isotopy> clone() const override;

 private:
  std::vector<double> c_;
};

// psi_t = x + t g(x) e_axis with g independent of x_axis (so the lift is
// unipotent and the family is a flow).
class ShearIsotopy final : public Isotopy {
 public:
  ShearIsotopy(int axis, spectral::TrigPoly g);
  int dim() const override { return g_.dim(); }
  MapLift lift_at(double t) const override;
  std::optional<VectorField> eulerian(double t) const override;
  std::unique_ptr<Isotopy> clone() const override;

 private:
  int axis_;
  spectral::TrigPoly g_;
};

// Flow of an autonomous vector field, advected on a lattice; node maps at
// j/steps are cached as they are first needed.
class FlowIsotopy final : public Isotopy {
 public:
  explicit FlowIsotopy(VectorField field, int steps = kDefaultTimeSteps,
                       int lattice = 64);
  int dim() const override { return static_cast<int>(field_.size()); }
  MapLift lift_at(double t) const override;
  std::optional<VectorField> eulerian(double t) const override;
  std::unique_ptr<Isotopy> clone() const override;
  int steps() const { return steps_; }

 private:
  const MapLift& node(int j) const;
  VectorField field_;
  int steps_;
  int lattice_;
  mutable std::mutex mutex_;
  mutable std::unique_ptr<LatticeAdvector> adv_;  // positioned at nodes_.size()-1
  mutable std::vector<MapLift> nodes_;
};

// Piecewise family through explicit time slices at j/(count-1); lifts
// between nodes are not defined (callers sample on the node grid).
class SampledIsotopy final : public Isotopy {
 public:
  explicit SampledIsotopy(std::vector<MapLift> slices);
  int dim() const override { return slices_.front().dim(); }
  MapLift lift_at(double t) const override;  // nearest node, t must hit one
  std::unique_ptr<Isotopy> clone() const override;
  int nslices() const { return static_cast<int>(slices_.size()); }
  const MapLift& slice(int j) const { return slices_[static_cast<std::size_t>(j)]; }

 private:
  std::vector<MapLift> slices_;
};

// Reparametrized concatenation: A(2t) on [0, 1/2], then B(2t-1) on [1/2, 1].
// B must start where A ends (see star_concat).
class ConcatIsotopy final : public Isotopy {
 public:
  ConcatIsotopy(std::unique_ptr<Isotopy> a, std::unique_ptr<Isotopy> b);
  int dim() const override { return a_->dim(); }
  MapLift lift_at(double t) const override;
  std::optional<VectorField> eulerian(double t) const override;
  std::vector<double> breakpoints() const override;
  std::unique_ptr<Isotopy> clone() const override;

 private:
  std::unique_ptr<Isotopy> a_, b_;
};

// Right-translate a from-identity family so it starts at `base`:
// psi_t = iso_t o base. The Eulerian velocity is unchanged.
class BasedIsotopy final : public Isotopy {
 public:
  BasedIsotopy(std::unique_ptr<Isotopy> iso, MapLift base);
  int dim() const override { return iso_->dim(); }
  MapLift lift_at(double t) const override;
  std::optional<VectorField> eulerian(double t) const override;
  std::vector<double> breakpoints() const override;
  std::unique_ptr<Isotopy> clone() const override;

 private:
  std::unique_ptr<Isotopy> iso_;
  MapLift base_;
};

// Time reversal rebased to start at the identity:
// psi_t = iso_{1-t} o iso_1^{-1}; Z_t = -Z_{1-t}.
class ReversedIsotopy final : public Isotopy {
 public:
  explicit ReversedIsotopy(std::unique_ptr<Isotopy> iso);
  int dim() const override { return iso_->dim(); }
  MapLift lift_at(double t) const override;
  std::optional<VectorField> eulerian(double t) const override;
  std::vector<double> breakpoints() const override;
  std::unique_ptr<Isotopy> clone() const override;

 private:
  std::unique_ptr<Isotopy> iso_;
  MapLift inv_end_;
};

// Concatenation with the endpoint-match gate: b starts at a's endpoint
// (sup_distance < 1e-10, else GateError).
std::unique_ptr<Isotopy> star_concat(const Isotopy& a, const Isotopy& b);

// Right-translate a from-identity family to start at base.
std::unique_ptr<Isotopy> based_at(const Isotopy& iso, MapLift base);

std::unique_ptr<Isotopy> reversed(const Isotopy& iso);

// Materialize lifts on the uniform node grid j/steps.
SampledIsotopy sample_isotopy(const Isotopy& iso, int steps);

}  // namespace torusflux::flows
