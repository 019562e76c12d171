// SPDX-License-Identifier: Apache-2.0
#include "torusflux/groupoid/model.hpp"

#include <Eigen/LU>
#include <cmath>

namespace torusflux::groupoid {

namespace {

void validate_symplectic(const Eigen::MatrixXd& omega) {
  if (omega.rows() != omega.cols())
    throw DimError("symplectic matrix must be square");
  const int n = static_cast<int>(omega.rows());
  if (n < 2 || n % 2 != 0 || n > spectral::kMaxDim)
    throw DimError("even dimension required");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (omega(i, j) != -omega(j, i))
        throw DimError("symplectic matrix must be antisymmetric");
  const double det = omega.determinant();
  if (!(std::abs(det) >= 1e-12))
    throw GateError("degenerate symplectic matrix", std::abs(det));
}

}  // namespace

GroupoidModel::GroupoidModel(ModelKind kind, int dim, Eigen::MatrixXd omega,
                             spectral::PoissonTensor pi)
    : kind_(kind), dim_(dim), omega_(std::move(omega)), pi_(std::move(pi)) {}

GroupoidModel GroupoidModel::symplectic_torus(const Eigen::MatrixXd& omega) {
  validate_symplectic(omega);
  const int n = static_cast<int>(omega.rows());
  Eigen::MatrixXd p = -omega.inverse();
  p = 0.5 * (p - p.transpose().eval());  // exact antisymmetry
  return GroupoidModel(ModelKind::SymplecticTorus, n, omega,
                       spectral::PoissonTensor::constant(p));
}

GroupoidModel GroupoidModel::standard_torus(int dim) {
  if (dim < 2 || dim % 2 != 0 || dim > spectral::kMaxDim)
    throw DimError("even dimension required");
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i + 1 < dim; i += 2) {
    omega(i, i + 1) = 1.0;
    omega(i + 1, i) = -1.0;
  }
  return symplectic_torus(omega);
}

GroupoidModel GroupoidModel::zero_poisson(int n) {
  if (n < 1 || n > spectral::kMaxDim)
    throw DimError("dimension must be in [1, 8], got " + std::to_string(n));
  return GroupoidModel(ModelKind::ZeroPoisson, n, Eigen::MatrixXd(),
                       spectral::PoissonTensor::zero(n));
}

const Eigen::MatrixXd& GroupoidModel::omega() const {
  if (kind_ != ModelKind::SymplecticTorus)
    throw DimError("zero-Poisson model carries no symplectic form");
  return omega_;
}

spectral::TwoForm GroupoidModel::omega_form() const {
  const Eigen::MatrixXd& m = omega();
  spectral::TwoForm w(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      if (m(i, j) != 0.0) w.set(i, j, spectral::TrigPoly::constant(dim_, m(i, j)));
  return w;
}

std::vector<double> GroupoidModel::alpha(std::span<const double> x,
                                         std::span<const double> p) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(p.size()) != dim_)
    throw DimError("point dimension mismatch");
  std::vector<double> out(x.begin(), x.end());
  if (kind_ == ModelKind::SymplecticTorus)
    for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] -= 0.5 * p[static_cast<std::size_t>(i)];
  return out;
}

std::vector<double> GroupoidModel::beta(std::span<const double> x,
                                        std::span<const double> p) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(p.size()) != dim_)
    throw DimError("point dimension mismatch");
  std::vector<double> out(x.begin(), x.end());
  if (kind_ == ModelKind::SymplecticTorus)
    for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] += 0.5 * p[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace torusflux::groupoid
