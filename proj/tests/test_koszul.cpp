// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Core>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "torusflux/algebra/koszul.hpp"
#include "torusflux/spectral/forms.hpp"
#include "torusflux/spectral/grid.hpp"

using namespace torusflux;
using namespace torusflux::spectral;
using namespace torusflux::algebra;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

PoissonTensor standard_pi2() {
  Eigen::MatrixXd p(2, 2);
  p << 0, 1, -1, 0;
  return PoissonTensor::constant(p);
}

double form_sup_diff(const OneForm& a, const OneForm& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, (a[i] - b[i]).l1());
  return m;
}

}  // namespace

TEST_CASE("bracket of one-forms matches a hand-expanded example") {
  // With the constant tensor p(dx1, dx2) = -1 (so the sharp of dx1 is
  // -d/dx2 and the sharp of dx2 is +d/dx1), expanding
  //   [omega, theta] = L_{X_omega} theta - L_{X_theta} omega - d p(omega, theta)
  // for omega = cos(2 pi x2) dx2 and theta = dx1 term by term gives
  //   L_{X_omega} theta = d(cos(2 pi x2))           = -2 pi sin(2 pi x2) dx2
  //   L_{X_theta} omega = d(-cos(2 pi x2))          = +2 pi sin(2 pi x2) dx2
  //   d p(omega, theta) = d(cos(2 pi x2))           = -2 pi sin(2 pi x2) dx2
  // so the bracket is -2 pi sin(2 pi x2) dx2.
  const PoissonTensor pi2 = standard_pi2();
  const std::vector<int> k2{0, 1};
  OneForm omega{TrigPoly(2), TrigPoly::harmonic_cos(2, k2, 1.0)};
  OneForm theta = constant_one_form(std::vector<double>{1.0, 0.0});

  const OneForm got = koszul_bracket(pi2, omega, theta);
  OneForm expected{TrigPoly(2),
                   TrigPoly::harmonic_sin(2, k2, -kTwoPi)};
  CHECK(form_sup_diff(got, expected) < 1e-12);

  // the same value read off a grid, independent of coefficient bookkeeping
  const auto g0 = to_grid(got[0], 64);
  const auto g1 = to_grid(got[1], 64);
  double worst = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double x2 = j / 64.0;
    worst = std::max(worst, std::abs(g0[static_cast<std::size_t>(j)]));
    worst = std::max(worst, std::abs(g1[static_cast<std::size_t>(j)] +
                                     kTwoPi * std::sin(kTwoPi * x2)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("lie derivative along a constant field differentiates coefficients") {
  const std::vector<int> k1{1, 0};
  // flowing cos(2 pi x1) dx2 along d/dx1
  VectorField x{TrigPoly::constant(2, 1.0), TrigPoly::constant(2, 0.0)};
  OneForm omega{TrigPoly(2), TrigPoly::harmonic_cos(2, k1, 1.0)};
  const OneForm got = lie(x, omega);
  OneForm expected{TrigPoly(2), TrigPoly::harmonic_sin(2, k1, -kTwoPi)};
  CHECK(form_sup_diff(got, expected) < 1e-13);
}

TEST_CASE("differential intertwines function and form brackets") {
  const PoissonTensor pi2 = standard_pi2();
  const std::vector<int> k1{1, 0};
  const std::vector<int> k2{0, 1};
  const TrigPoly f = TrigPoly::harmonic_sin(2, k1, 1.0);
  const TrigPoly g = TrigPoly::harmonic_sin(2, k2, 1.0);

  // {sin(2 pi x1), sin(2 pi x2)} = -(2 pi)^2 cos(2 pi x1) cos(2 pi x2)
  const TrigPoly fg = poisson_bracket(pi2, f, g);
  const TrigPoly expected = TrigPoly::harmonic_cos(2, k1, 1.0) *
                            TrigPoly::harmonic_cos(2, k2, 1.0) *
                            (-kTwoPi * kTwoPi);
  CHECK(max_abs_coeff_diff(fg, expected) < 1e-10);

  const OneForm lhs = d(fg);
  const OneForm rhs = koszul_bracket(pi2, d(f), d(g));
  CHECK(form_sup_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("extension bracket closes on exact pairs") {
  const PoissonTensor pi2 = standard_pi2();
  const std::vector<int> k1{1, 0};
  const std::vector<int> k2{0, 1};
  const TrigPoly f = TrigPoly::harmonic_sin(2, k1, 1.0);
  const TrigPoly g = TrigPoly::harmonic_sin(2, k2, 1.0);

  const ExtElement a{d(f) * -1.0, f};
  const ExtElement b{d(g) * -1.0, g};
  const ExtElement r = central_ext_bracket(pi2, a, b);

  const TrigPoly h = poisson_bracket(pi2, f, g) * -1.0;
  CHECK(max_abs_coeff_diff(r.f, h) < 1e-10);
  CHECK(form_sup_diff(r.zeta, d(h) * -1.0) < 1e-10);
}

TEST_CASE("constant tensors satisfy the cyclic identity exactly") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        p(i, j) = u(rng);
        p(j, i) = -p(i, j);
      }
    const PoissonTensor pi4 = PoissonTensor::constant(p);
    CHECK(pi4.jacobi_residual() == 0.0);
    CHECK_NOTHROW(pi4.require_poisson());
  }
}

TEST_CASE("a twisted tensor fails the cyclic identity loudly") {
  // pi^{12} = 1 + cos(2 pi x3)/2, pi^{13} = sin(2 pi x1)/2: not a Poisson
  // structure, and the violation is order one, not roundoff.
  const std::vector<int> e1{1, 0, 0};
  const std::vector<int> e3{0, 0, 1};
  std::vector<TrigPoly> upper{
      TrigPoly::constant(3, 1.0) + TrigPoly::harmonic_cos(3, e3, 0.5),
      TrigPoly::harmonic_sin(3, e1, 0.5), TrigPoly(3)};
  const PoissonTensor twisted = PoissonTensor::from_upper(3, std::move(upper));
  CHECK(twisted.jacobi_residual(1) > 0.1);
}

TEST_CASE("the degree chain has vanishing residuals") {
  const PoissonTensor pi2 = standard_pi2();
  const auto rep = exact_sequence_report(pi2);
  CHECK(rep.ker_d_residual < 1e-10);
  CHECK(rep.class_of_exact_residual < 1e-10);
  CHECK(rep.basis_realized_residual < 1e-10);
  CHECK(rep.bracket_exactness_residual < 1e-10);
  CHECK(rep.max_residual() < 1e-10);
}

TEST_CASE("mismatched dimensions are rejected") {
  const PoissonTensor pi2 = standard_pi2();
  OneForm theta3 = constant_one_form(std::vector<double>{1.0, 0.0, 0.0});
  OneForm theta2 = constant_one_form(std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS((void)koszul_bracket(pi2, theta3, theta3), DimError);
  CHECK_THROWS_AS((void)koszul_bracket(pi2, theta2, theta3), DimError);
}
