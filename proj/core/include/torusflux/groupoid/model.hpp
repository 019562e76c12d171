// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "torusflux/spectral/forms.hpp"
#include "torusflux/spectral/poisson.hpp"

namespace torusflux::groupoid {

enum class ModelKind { ZeroPoisson, SymplecticTorus };

// The two flat-torus groupoid models.
//
// SymplecticTorus(2m, Omega): base T^{2m} with constant symplectic form
// omega = sum Omega_ij dx_i dx_j (i<j), arrow space T^{2m} x R^{2m} in the
// chart where source alpha(x,p) = x - p/2 and target beta(x,p) = x + p/2.
// The induced Poisson tensor on the base is pi = -Omega^{-1} (the sign is
// fixed so the path exp(t theta) has flux t[theta], and frozen).
//
// ZeroPoisson(n): base T^n with pi = 0; arrows are covectors (the cotangent
// bundle) with alpha = beta = bundle projection.
class GroupoidModel {
 public:
  static GroupoidModel symplectic_torus(const Eigen::MatrixXd& omega);
  // Block-diagonal omega = dx_1^dx_2 + ... + dx_{2m-1}^dx_{2m}.
  static GroupoidModel standard_torus(int dim);
  static GroupoidModel zero_poisson(int n);

  ModelKind kind() const { return kind_; }
  int dim() const { return dim_; }  // base torus dimension
  // Constant symplectic matrix; SymplecticTorus only.
  const Eigen::MatrixXd& omega() const;
  spectral::TwoForm omega_form() const;
  const spectral::PoissonTensor& pi() const { return pi_; }

  // alpha/beta chart maps on points of the arrow space (cover coordinates).
  std::vector<double> alpha(std::span<const double> x,
                            std::span<const double> p) const;
  std::vector<double> beta(std::span<const double> x,
                           std::span<const double> p) const;

 private:
  GroupoidModel(ModelKind kind, int dim, Eigen::MatrixXd omega,
                spectral::PoissonTensor pi);
  ModelKind kind_;
  int dim_;
  Eigen::MatrixXd omega_;
  spectral::PoissonTensor pi_;
};

}  // namespace torusflux::groupoid
