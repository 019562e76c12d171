// SPDX-License-Identifier: Apache-2.0
#include "torusflux/flows/advect.hpp"

#include <cmath>
#include <vector>

#include "torusflux/spectral/grid.hpp"

namespace torusflux::flows {

using spectral::TrigPoly;
using spectral::VectorField;

namespace {

void eval_field(const VectorField& x, const double* pt, int dim, double* out) {
  const std::span<const double> p(pt, static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a)
    out[a] = x[static_cast<std::size_t>(a)].eval(p);
}

void check_field(const VectorField& x, int dim) {
  if (static_cast<int>(x.size()) != dim)
    throw DimError("field component count does not match dimension");
  for (const auto& c : x)
    if (c.dim() != dim) throw DimError("field component dimension mismatch");
}

}  // namespace

LatticeAdvector::LatticeAdvector(FieldSampler x, int dim, int lattice)
    : x_(std::move(x)), dim_(dim), n_(lattice) {
  if (dim < 1 || dim > spectral::kMaxDim)
    throw DimError("dimension must be in [1, 8], got " + std::to_string(dim));
  if (n_ < 2) throw GridError("lattice resolution must be at least 2");
  total_ = 1;
  for (int i = 0; i < dim_; ++i) {
    total_ *= static_cast<std::size_t>(n_);
    if (total_ > (std::size_t{1} << 24))
      throw GridError("advection lattice exceeds the size guard");
  }
  pos_.resize(total_ * static_cast<std::size_t>(dim_));
  for (std::size_t p = 0; p < total_; ++p) {
    std::size_t rem = p;
    for (int a = dim_ - 1; a >= 0; --a) {
      pos_[p * dim_ + static_cast<std::size_t>(a)] =
          static_cast<double>(rem % static_cast<std::size_t>(n_)) / n_;
      rem /= static_cast<std::size_t>(n_);
    }
  }
  start_ = pos_;
}

void LatticeAdvector::advance(double t0, double t1, int steps) {
  if (steps < 1) throw NumericalError("advection needs at least one step");
  const double h = (t1 - t0) / steps;
  std::vector<double> k1(static_cast<std::size_t>(dim_)),
      k2(static_cast<std::size_t>(dim_)), k3(static_cast<std::size_t>(dim_)),
      k4(static_cast<std::size_t>(dim_)), tmp(static_cast<std::size_t>(dim_));
  for (int s = 0; s < steps; ++s) {
    const double t = t0 + s * h;
    const VectorField xa = x_(t);
    const VectorField xm = x_(t + 0.5 * h);
    const VectorField xb = x_(t + h);
    check_field(xa, dim_);
    check_field(xm, dim_);
    check_field(xb, dim_);
    for (std::size_t p = 0; p < total_; ++p) {
      double* y = pos_.data() + p * dim_;
      eval_field(xa, y, dim_, k1.data());
      for (int a = 0; a < dim_; ++a)
        tmp[static_cast<std::size_t>(a)] = y[a] + 0.5 * h * k1[static_cast<std::size_t>(a)];
      eval_field(xm, tmp.data(), dim_, k2.data());
      for (int a = 0; a < dim_; ++a)
        tmp[static_cast<std::size_t>(a)] = y[a] + 0.5 * h * k2[static_cast<std::size_t>(a)];
      eval_field(xm, tmp.data(), dim_, k3.data());
      for (int a = 0; a < dim_; ++a)
        tmp[static_cast<std::size_t>(a)] = y[a] + h * k3[static_cast<std::size_t>(a)];
      eval_field(xb, tmp.data(), dim_, k4.data());
      for (int a = 0; a < dim_; ++a)
        y[a] += h / 6.0 *
                (k1[static_cast<std::size_t>(a)] + 2.0 * k2[static_cast<std::size_t>(a)] +
                 2.0 * k3[static_cast<std::size_t>(a)] + k4[static_cast<std::size_t>(a)]);
    }
  }
}

MapLift LatticeAdvector::reconstruct(int band) const {
  if (band == 0) band = std::min(kBandwidthCap, (n_ - 2) / 2);
  std::vector<TrigPoly> u;
  u.reserve(static_cast<std::size_t>(dim_));
  double aliasing = 0.0;
  std::vector<double> samples(total_);
  for (int a = 0; a < dim_; ++a) {
    for (std::size_t p = 0; p < total_; ++p)
      samples[p] = pos_[p * dim_ + static_cast<std::size_t>(a)] -
                   start_[p * dim_ + static_cast<std::size_t>(a)];
    spectral::CoeffResult r = spectral::to_coeffs(samples, dim_, n_, band);
    aliasing += r.aliasing_l2;
    u.push_back(spectral::tp_chop(r.poly, 1e-15, &aliasing));
  }
  return MapLift(std::move(u), aliasing);
}

MapLift advect_map(const FieldSampler& x, int dim, double t0, double t1,
                   int steps, int lattice, int band) {
  LatticeAdvector adv(x, dim, lattice);
  adv.advance(t0, t1, steps);
  return adv.reconstruct(band);
}

std::vector<MapLift> advect_nodes(const FieldSampler& x, int dim, int steps,
                                  int lattice, int band) {
  if (steps < 1) throw NumericalError("advection needs at least one step");
  LatticeAdvector adv(x, dim, lattice);
  std::vector<MapLift> nodes;
  nodes.reserve(static_cast<std::size_t>(steps) + 1);
  nodes.push_back(adv.reconstruct(band));
  const double h = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    adv.advance(s * h, (s + 1) * h, 1);
    nodes.push_back(adv.reconstruct(band));
  }
  return nodes;
}

}  // namespace torusflux::flows
