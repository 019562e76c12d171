// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "torusflux/spectral/forms.hpp"

namespace torusflux::flows {

using spectral::TrigPoly;

// Lattice-periodic lift psi(x) = x + u(x) on the universal cover:
// psi(x + l) = psi(x) + l for l in Z^n, periodicity of u exact by
// representation. Carries the accumulated aliasing residual of any grid
// re-interpolations that produced it (0 for closed-form lifts).
class MapLift {
 public:
  static MapLift identity(int dim);
  static MapLift translation(std::span<const double> c);
  explicit MapLift(std::vector<TrigPoly> u, double aliasing_residual = 0.0);

  int dim() const { return dim_; }
  const std::vector<TrigPoly>& disp() const { return u_; }
  double aliasing_residual() const { return aliasing_; }
  int max_band() const;
  bool is_identity() const;

  // psi(x); x and result live on the cover.
  std::vector<double> apply(std::span<const double> x) const;
  // D psi(x) = I + Du(x), derivatives taken spectrally.
  Eigen::MatrixXd jacobian(std::span<const double> x) const;
  // Integral of u (the zero modes).
  std::vector<double> mean_disp() const;

 private:
  int dim_;
  std::vector<TrigPoly> u_;
  double aliasing_ = 0.0;
};

// outer o inner, computed by sampling u_outer at displaced grid points and
// re-projecting onto `band` (0 = automatic). The result's aliasing residual
// adds the new projection loss to the inputs'; exceeding `aliasing_bound`
// throws BandwidthError ("aliasing bound exceeded").
MapLift compose(const MapLift& outer, const MapLift& inner, int band = 0,
                double aliasing_bound = kAliasingBound);

// Fixed-point inverse: psi^-1(y) = y + v(y) with v = -u(y + v), iterated on
// a grid to `tol`; throws NumericalError if the iteration stalls.
MapLift inverse(const MapLift& psi, double tol = 1e-13, int band = 0);

// sup over the sample grid of the max-abs entry of
// D psi(x)^T Omega D psi(x) - Omega; grid = 0 picks a resolution that
// resolves the integrand's full bandwidth.
double symplecto_residual(const Eigen::MatrixXd& omega, const MapLift& psi,
                          int grid = 0);

// Coefficient-l1 bound on sup_x max_i |u_a^i(x) - u_b^i(x)|.
double sup_distance(const MapLift& a, const MapLift& b);

}  // namespace torusflux::flows
