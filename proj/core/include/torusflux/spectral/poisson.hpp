// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <memory>

#include "torusflux/spectral/forms.hpp"

namespace torusflux::spectral {

// Antisymmetric contravariant 2-tensor with trig-polynomial components.
// Immutable after construction; copies share the Jacobi-residual memo.
class PoissonTensor {
 public:
  static PoissonTensor zero(int dim);
  static PoissonTensor constant(const Eigen::MatrixXd& p);
  // Strict upper triangle, same layout as TwoForm::upper().
  static PoissonTensor from_upper(int dim, std::vector<TrigPoly> upper);

  int dim() const { return dim_; }
  bool is_constant() const { return constant_; }
  int max_band() const;
  // Signed component pi^{ij}: comp(i, j) == -comp(j, i).
  TrigPoly comp(int i, int j) const;
  const std::vector<TrigPoly>& upper() const { return c_; }
  // Matrix of component means; equals the tensor itself when constant.
  Eigen::MatrixXd constant_part() const;

  // Max over real basis triples f, g, h in {cos, sin}(2 pi k.x),
  // 0 < |k|_inf <= test_band, of the cyclic sum {{f,g},h}+{{g,h},f}+{{h,f},g},
  // reported as a coefficient-l1 bound (it dominates the sup norm and
  // vanishes exactly when the cyclic sum does). test_band = 0 selects
  // max_band() + 1, which resolves every obstruction a tensor of this
  // bandwidth can carry against low modes. Constant tensors short-circuit
  // to exact 0: every term of the cyclic defect differentiates pi.
  // Results are memoized per test band.
  double jacobi_residual(int test_band = 0) const;

  // Admission gate for groupoid-level use; throws GateError above tol.
  void require_poisson(double tol = kJacobiGateTol) const;

 private:
  explicit PoissonTensor(int dim);
  std::size_t flat(int i, int j) const;

  struct Memo;
  int dim_;
  bool constant_ = true;
  std::vector<TrigPoly> c_;
  std::shared_ptr<Memo> memo_;
};

// (pi^# theta)^i = sum_j pi^{ij} theta_j.
VectorField sharp(const PoissonTensor& pi, const OneForm& theta);

// pi(omega, theta) = <pi^# omega, theta>.
TrigPoly pairing(const PoissonTensor& pi, const OneForm& omega,
                 const OneForm& theta);

// {f, g} = pi(df, dg).
TrigPoly poisson_bracket(const PoissonTensor& pi, const TrigPoly& f,
                         const TrigPoly& g);

}  // namespace torusflux::spectral
