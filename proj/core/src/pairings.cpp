// SPDX-License-Identifier: Apache-2.0
#include "torusflux/algebra/pairings.hpp"

#include <Eigen/LU>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>

#include "torusflux/algebra/cohomology.hpp"

namespace torusflux::algebra {

using spectral::constant_one_form;
using spectral::OneForm;
using spectral::TrigPoly;

namespace {

void require_closed(const OneForm& theta, const char* which) {
  const double r = closedness_residual(theta);
  if (r > kClosedTol)
    throw NotClosedError(std::string(which) +
                             " representative is not closed: ||d theta|| = " +
                             std::to_string(r),
                         r);
}

// Exterior algebra on up to kMaxDim generators: bitmask -> coefficient of
// dx^{i_1} ^ ... ^ dx^{i_k} with ascending indices.
using MultiForm = std::map<std::uint32_t, TrigPoly>;

int interleave_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  for (std::uint32_t rest = b; rest;) {
    const int j = std::countr_zero(rest);
    rest &= rest - 1;
    inversions += std::popcount(a >> (j + 1));
  }
  return inversions % 2 ? -1 : 1;
}

MultiForm wedge(const MultiForm& a, const MultiForm& b) {
  MultiForm out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (ma & mb) continue;
      TrigPoly prod = ca * cb;
      if (interleave_sign(ma, mb) < 0) prod *= -1.0;
      auto [it, fresh] = out.emplace(ma | mb, prod);
      if (!fresh) it->second += prod;
    }
  }
  return out;
}

MultiForm one_form_multi(const OneForm& theta) {
  MultiForm m;
  for (std::size_t i = 0; i < theta.size(); ++i)
    m.emplace(std::uint32_t{1} << i, theta[i]);
  return m;
}

void validate_symplectic(const Eigen::MatrixXd& omega) {
  if (omega.rows() != omega.cols())
    throw DimError("symplectic matrix must be square");
  const int n = static_cast<int>(omega.rows());
  if (n < 2 || n > spectral::kMaxDim || n % 2 != 0)
    throw DimError("even dimension required");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (omega(i, j) != -omega(j, i))
        throw DimError("symplectic matrix must be exactly antisymmetric");
  const double det = omega.determinant();
  if (std::abs(det) < 1e-12)
    throw GateError("degenerate symplectic matrix", std::abs(det));
}

double sigma_of_forms(const Eigen::MatrixXd& omega, const OneForm& theta1,
                      const OneForm& theta2) {
  const int n = static_cast<int>(omega.rows());
  if (static_cast<int>(theta1.size()) != n ||
      static_cast<int>(theta2.size()) != n)
    throw DimError("one-form dimension does not match symplectic matrix");
  MultiForm omega_m;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (omega(i, j) != 0.0)
        omega_m.emplace((std::uint32_t{1} << i) | (std::uint32_t{1} << j),
                        TrigPoly::constant(n, omega(i, j)));
  // omega^(m-1), m = n/2; the empty product is the constant 0-form 1.
  MultiForm power;
  power.emplace(0u, TrigPoly::constant(n, 1.0));
  for (int p = 0; p < n / 2 - 1; ++p) power = wedge(power, omega_m);

  const MultiForm top =
      wedge(wedge(one_form_multi(theta1), one_form_multi(theta2)), power);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  const auto it = top.find(full);
  // Orientation dx_1 ^ ... ^ dx_n > 0: the top coefficient integrates as-is.
  return it == top.end() ? 0.0 : it->second.mean();
}

}  // namespace

double pairing_mu(const PoissonTensor& pi, const OneForm& theta1,
                  const OneForm& theta2) {
  require_closed(theta1, "first");
  require_closed(theta2, "second");
  return spectral::pairing(pi, theta1, theta2).mean();
}

double pairing_mu(const PoissonTensor& pi, const CohomologyClass& c1,
                  const CohomologyClass& c2) {
  if (c1.dim() != pi.dim() || c2.dim() != pi.dim())
    throw DimError("class dimension does not match tensor");
  return c2.coeffs.dot(mu_matrix(pi) * c1.coeffs);
}

Eigen::MatrixXd mu_matrix(const PoissonTensor& pi) {
  return pi.constant_part();
}

TwoForm constant_two_form(const Eigen::MatrixXd& omega) {
  if (omega.rows() != omega.cols())
    throw DimError("two-form matrix must be square");
  const int n = static_cast<int>(omega.rows());
  TwoForm w(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (omega(i, j) != -omega(j, i))
        throw DimError("two-form matrix must be exactly antisymmetric");
      w.set(i, j, TrigPoly::constant(n, omega(i, j)));
    }
  return w;
}

double pairing_sigma(const Eigen::MatrixXd& omega, const OneForm& theta1,
                     const OneForm& theta2) {
  validate_symplectic(omega);
  require_closed(theta1, "first");
  require_closed(theta2, "second");
  return sigma_of_forms(omega, theta1, theta2);
}

double pairing_sigma(const Eigen::MatrixXd& omega, const CohomologyClass& c1,
                     const CohomologyClass& c2) {
  validate_symplectic(omega);
  const int n = static_cast<int>(omega.rows());
  if (c1.dim() != n || c2.dim() != n)
    throw DimError("class dimension does not match symplectic matrix");
  std::vector<double> v1(c1.coeffs.data(), c1.coeffs.data() + n);
  std::vector<double> v2(c2.coeffs.data(), c2.coeffs.data() + n);
  return sigma_of_forms(omega, constant_one_form(v1), constant_one_form(v2));
}

Eigen::MatrixXd sigma_matrix(const Eigen::MatrixXd& omega) {
  validate_symplectic(omega);
  const int n = static_cast<int>(omega.rows());
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> ei(static_cast<std::size_t>(n), 0.0);
    ei[static_cast<std::size_t>(i)] = 1.0;
    for (int j = 0; j < n; ++j) {
      std::vector<double> ej(static_cast<std::size_t>(n), 0.0);
      ej[static_cast<std::size_t>(j)] = 1.0;
      // Same slot order as mu_matrix: entry (i, j) pairs [dx_j] with [dx_i].
      s(i, j) = sigma_of_forms(omega, constant_one_form(ej),
                               constant_one_form(ei));
    }
  }
  return s;
}

}  // namespace torusflux::algebra
