// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "torusflux/flows/maplift.hpp"

namespace torusflux::flows {

// Time slice of a (possibly non-autonomous) vector field.
using FieldSampler = std::function<spectral::VectorField(double)>;

// Lattice of trajectories of dx/dt = X_t(x), advanced by classical
// fixed-step 4th-order integration and unwrapped on the cover, so the
// displacement stays lattice-periodic. reconstruct() projects it onto a
// band (0 = the largest the lattice supports) and reports the projection's
// aliasing residual on the lift.
class LatticeAdvector {
 public:
  LatticeAdvector(FieldSampler x, int dim, int lattice = 64);
  // steps RK4 steps across [t0, t1]; resumable (time is caller-tracked).
  void advance(double t0, double t1, int steps);
  MapLift reconstruct(int band = 0) const;
  int dim() const { return dim_; }

 private:
  FieldSampler x_;
  int dim_;
  int n_;
  std::size_t total_;
  std::vector<double> pos_;
  std::vector<double> start_;
};

// Flow map over [t0, t1] in `steps` RK4 steps on a lattice^dim grid;
// global error O(steps^-4).
MapLift advect_map(const FieldSampler& x, int dim, double t0, double t1,
                   int steps, int lattice = 64, int band = 0);

// Lifts at every node j/steps, j = 0..steps, sharing one trajectory sweep.
std::vector<MapLift> advect_nodes(const FieldSampler& x, int dim, int steps,
                                  int lattice = 64, int band = 0);

}  // namespace torusflux::flows
