// SPDX-License-Identifier: Apache-2.0
#include "torusflux/flows/isotopy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace torusflux::flows {

using spectral::TrigPoly;

namespace {

constexpr double kNodeSnapTol = 1e-9;

FieldSampler autonomous(VectorField field) {
  return [f = std::move(field)](double) { return f; };
}

std::vector<double> merged_breakpoints(const std::vector<double>& a,
                                       const std::vector<double>& b,
                                       double scale_a, double shift_b) {
  std::set<double> pts;
  for (double t : a) pts.insert(t * scale_a);
  pts.insert(0.5);
  for (double t : b) pts.insert(shift_b + t * 0.5);
  return {pts.begin(), pts.end()};
}

}  // namespace

std::optional<VectorField> Isotopy::eulerian(double) const { return std::nullopt; }

void Isotopy::check_t(double t) {
  if (t < -1e-12 || t > 1.0 + 1e-12)
    throw TimeError("isotopy time must lie in [0, 1], got " + std::to_string(t));
}

TranslationIsotopy::TranslationIsotopy(std::vector<double> c) : c_(std::move(c)) {
  if (c_.empty() || c_.size() > static_cast<std::size_t>(spectral::kMaxDim))
    throw DimError("translation vector dimension must be in [1, 8]");
}

MapLift TranslationIsotopy::lift_at(double t) const {
  check_t(t);
  std::vector<double> tc(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) tc[i] = t * c_[i];
  return MapLift::translation(tc);
}

std::optional<VectorField> TranslationIsotopy::eulerian(double t) const {
  check_t(t);
  VectorField z;
  z.reserve(c_.size());
  for (double ci : c_) z.push_back(TrigPoly::constant(dim(), ci));
  return z;
}

std::unique_ptr<Isotopy> TranslationIsotopy::clone() const {
  return std::make_unique<TranslationIsotopy>(c_);
}

ShearIsotopy::ShearIsotopy(int axis, TrigPoly g) : axis_(axis), g_(std::move(g)) {
  if (axis_ < 0 || axis_ >= g_.dim())
    throw AxisError("shear axis out of range for dimension " +
                    std::to_string(g_.dim()));
  if (!spectral::tp_diff(g_, axis_).is_zero())
    throw DimError("shear profile must not depend on the sheared axis");
}

MapLift ShearIsotopy::lift_at(double t) const {
  check_t(t);
  std::vector<TrigPoly> u;
  u.reserve(static_cast<std::size_t>(dim()));
  for (int a = 0; a < dim(); ++a)
    u.push_back(a == axis_ ? g_ * t : TrigPoly::constant(dim(), 0.0));
  return MapLift(std::move(u));
}

std::optional<VectorField> ShearIsotopy::eulerian(double t) const {
  check_t(t);
  VectorField z;
  z.reserve(static_cast<std::size_t>(dim()));
  for (int a = 0; a < dim(); ++a)
    z.push_back(a == axis_ ? g_ : TrigPoly::constant(dim(), 0.0));
  return z;
}

std::unique_ptr<Isotopy> ShearIsotopy::clone() const {
  return std::make_unique<ShearIsotopy>(axis_, g_);
}

FlowIsotopy::FlowIsotopy(VectorField field, int steps, int lattice)
    : field_(std::move(field)), steps_(steps), lattice_(lattice) {
  if (field_.empty() || field_.size() > static_cast<std::size_t>(spectral::kMaxDim))
    throw DimError("field dimension must be in [1, 8]");
  for (const auto& c : field_)
    if (c.dim() != static_cast<int>(field_.size()))
      throw DimError("field component dimension mismatch");
  if (steps_ < 1) throw NumericalError("flow needs at least one time step");
  if (lattice_ < 2) throw GridError("lattice resolution must be at least 2");
}

const MapLift& FlowIsotopy::node(int j) const {
  std::scoped_lock lock(mutex_);
  if (!adv_) adv_ = std::make_unique<LatticeAdvector>(autonomous(field_), dim(), lattice_);
  const double h = 1.0 / steps_;
  while (static_cast<int>(nodes_.size()) <= j) {
    const int s = static_cast<int>(nodes_.size());
    if (s > 0) adv_->advance((s - 1) * h, s * h, 1);
    nodes_.push_back(adv_->reconstruct());
  }
  return nodes_[static_cast<std::size_t>(j)];
}

MapLift FlowIsotopy::lift_at(double t) const {
  check_t(t);
  t = std::clamp(t, 0.0, 1.0);
  const double scaled = t * steps_;
  const int j = static_cast<int>(std::lround(scaled));
  if (std::abs(scaled - j) <= kNodeSnapTol) return node(j);
  // Off the node grid: integrate [0, t] afresh at the same step density.
  const int s = std::max(1, static_cast<int>(std::ceil(scaled - 1e-12)));
  LatticeAdvector adv(autonomous(field_), dim(), lattice_);
  adv.advance(0.0, t, s);
  return adv.reconstruct();
}

std::optional<VectorField> FlowIsotopy::eulerian(double t) const {
  check_t(t);
  return field_;
}

std::unique_ptr<Isotopy> FlowIsotopy::clone() const {
  return std::make_unique<FlowIsotopy>(field_, steps_, lattice_);
}

SampledIsotopy::SampledIsotopy(std::vector<MapLift> slices)
    : slices_(std::move(slices)) {
  if (slices_.size() < 2)
    throw GridError("sampled isotopy needs at least two time slices");
  for (const auto& s : slices_)
    if (s.dim() != slices_.front().dim())
      throw DimError("sampled isotopy slices have mixed dimensions");
}

MapLift SampledIsotopy::lift_at(double t) const {
  check_t(t);
  const double scaled = t * (static_cast<int>(slices_.size()) - 1);
  const int j = static_cast<int>(std::lround(scaled));
  if (std::abs(scaled - j) > kNodeSnapTol)
    throw GridError("sampled isotopy queried off its time grid at t = " +
                    std::to_string(t));
  return slices_[static_cast<std::size_t>(j)];
}

std::unique_ptr<Isotopy> SampledIsotopy::clone() const {
  return std::make_unique<SampledIsotopy>(slices_);
}

ConcatIsotopy::ConcatIsotopy(std::unique_ptr<Isotopy> a, std::unique_ptr<Isotopy> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_->dim() != b_->dim())
    throw DimError("concatenated isotopies have mixed dimensions");
}

MapLift ConcatIsotopy::lift_at(double t) const {
  check_t(t);
  if (t <= 0.5) return a_->lift_at(std::min(2.0 * t, 1.0));
  return b_->lift_at(2.0 * t - 1.0);
}

std::optional<VectorField> ConcatIsotopy::eulerian(double t) const {
  check_t(t);
  std::optional<VectorField> z =
      t < 0.5 ? a_->eulerian(std::min(2.0 * t, 1.0))
              : b_->eulerian(std::clamp(2.0 * t - 1.0, 0.0, 1.0));
  if (!z) return std::nullopt;
  return *z * 2.0;
}

std::vector<double> ConcatIsotopy::breakpoints() const {
  return merged_breakpoints(a_->breakpoints(), b_->breakpoints(), 0.5, 0.5);
}

std::unique_ptr<Isotopy> ConcatIsotopy::clone() const {
  return std::make_unique<ConcatIsotopy>(a_->clone(), b_->clone());
}

BasedIsotopy::BasedIsotopy(std::unique_ptr<Isotopy> iso, MapLift base)
    : iso_(std::move(iso)), base_(std::move(base)) {
  if (iso_->dim() != base_.dim())
    throw DimError("base map dimension does not match the isotopy");
}

MapLift BasedIsotopy::lift_at(double t) const {
  return compose(iso_->lift_at(t), base_);
}

std::optional<VectorField> BasedIsotopy::eulerian(double t) const {
  return iso_->eulerian(t);
}

std::vector<double> BasedIsotopy::breakpoints() const { return iso_->breakpoints(); }

std::unique_ptr<Isotopy> BasedIsotopy::clone() const {
  return std::make_unique<BasedIsotopy>(iso_->clone(), base_);
}

ReversedIsotopy::ReversedIsotopy(std::unique_ptr<Isotopy> iso)
    : iso_(std::move(iso)), inv_end_(inverse(iso_->lift_at(1.0))) {}

MapLift ReversedIsotopy::lift_at(double t) const {
  check_t(t);
  return compose(iso_->lift_at(std::clamp(1.0 - t, 0.0, 1.0)), inv_end_);
}

std::optional<VectorField> ReversedIsotopy::eulerian(double t) const {
  check_t(t);
  std::optional<VectorField> z = iso_->eulerian(std::clamp(1.0 - t, 0.0, 1.0));
  if (!z) return std::nullopt;
  return *z * -1.0;
}

std::vector<double> ReversedIsotopy::breakpoints() const {
  std::vector<double> out;
  for (double b : iso_->breakpoints()) out.push_back(1.0 - b);
  std::sort(out.begin(), out.end());
  return out;
}

std::unique_ptr<Isotopy> ReversedIsotopy::clone() const {
  // Rebuild from scratch so inv_end_ is recomputed against the clone.
  return std::make_unique<ReversedIsotopy>(iso_->clone());
}

std::unique_ptr<Isotopy> star_concat(const Isotopy& a, const Isotopy& b) {
  const double gap = sup_distance(b.lift_at(0.0), a.lift_at(1.0));
  if (!(gap < 1e-10))
    throw GateError("concatenation endpoints do not match", gap);
  return std::make_unique<ConcatIsotopy>(a.clone(), b.clone());
}

std::unique_ptr<Isotopy> based_at(const Isotopy& iso, MapLift base) {
  return std::make_unique<BasedIsotopy>(iso.clone(), std::move(base));
}

std::unique_ptr<Isotopy> reversed(const Isotopy& iso) {
  return std::make_unique<ReversedIsotopy>(iso.clone());
}

SampledIsotopy sample_isotopy(const Isotopy& iso, int steps) {
  if (steps < 1) throw GridError("sampling needs at least one step");
  std::vector<MapLift> slices;
  slices.reserve(static_cast<std::size_t>(steps) + 1);
  for (int j = 0; j <= steps; ++j)
    slices.push_back(iso.lift_at(static_cast<double>(j) / steps));
  return SampledIsotopy(std::move(slices));
}

}  // namespace torusflux::flows
