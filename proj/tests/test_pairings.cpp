// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "torusflux/algebra/cohomology.hpp"
#include "torusflux/algebra/pairings.hpp"
#include "torusflux/spectral/forms.hpp"

using namespace torusflux;
using namespace torusflux::spectral;
using namespace torusflux::algebra;

namespace {

Eigen::MatrixXd omega_std(int dim) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i + 1 < dim; i += 2) {
    w(i, i + 1) = 1.0;
    w(i + 1, i) = -1.0;
  }
  return w;
}

OneForm basis_form(int dim, int i) {
  std::vector<double> c(static_cast<std::size_t>(dim), 0.0);
  c[static_cast<std::size_t>(i)] = 1.0;
  return constant_one_form(c);
}

}  // namespace

TEST_CASE("area pairing of the coordinate classes is the signed volume") {
  // On the two-torus the pairing of [dx1] with [dx2] is the integral of
  // dx1 ^ dx2, which is +1 in the coordinate orientation.
  const Eigen::MatrixXd w2 = omega_std(2);
  CHECK(pairing_sigma(w2, basis_form(2, 0), basis_form(2, 1)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pairing_sigma(w2, basis_form(2, 1), basis_form(2, 0)) ==
        doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(pairing_sigma(w2, basis_form(2, 0), basis_form(2, 0)) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("tensor pairing matrix is the constant part of the tensor") {
  const PoissonTensor pi2 = PoissonTensor::constant(omega_std(2));
  const Eigen::MatrixXd m = mu_matrix(pi2);
  CHECK((m - omega_std(2)).cwiseAbs().maxCoeff() < 1e-14);

  // absolute anchor: pairing the [dx1] class against the [dx2] class
  // integrates pi(dx1, dx2) = -1 over the torus
  CHECK(pairing_mu(pi2, basis_form(2, 0), basis_form(2, 1)) ==
        doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(pairing_mu(pi2, basis_form(2, 1), basis_form(2, 0)) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // the matrix uses the same slots: m(i, j) pairs column class j into row i
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(pairing_mu(pi2, basis_form(2, j), basis_form(2, i)) ==
            doctest::Approx(m(i, j)).epsilon(1e-14));
}

TEST_CASE("pairings only see the class, not the representative") {
  const PoissonTensor pi2 = PoissonTensor::constant(omega_std(2));
  const std::vector<int> k1{1, 0};
  const TrigPoly g = TrigPoly::harmonic_sin(2, k1, 0.2);
  const OneForm theta1 = basis_form(2, 0) + d(g);  // same class as [dx1]
  const OneForm theta2 = basis_form(2, 1);

  const double via_forms = pairing_mu(pi2, theta1, theta2);
  const double via_classes =
      pairing_mu(pi2, cohomology_class(theta1), cohomology_class(theta2));
  CHECK(via_forms == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(via_classes == doctest::Approx(via_forms).epsilon(1e-12));

  // exact forms pair to zero against anything closed
  CHECK(std::abs(pairing_mu(pi2, d(g), theta2)) < 1e-12);
  CHECK(std::abs(pairing_sigma(omega_std(2), d(g), theta2)) < 1e-12);
}

TEST_CASE("non-closed representatives are rejected") {
  const PoissonTensor pi2 = PoissonTensor::constant(omega_std(2));
  const std::vector<int> k2{0, 1};
  // theta = cos(2 pi x2) dx1 has d theta = 2 pi sin(2 pi x2) dx1 ^ dx2
  OneForm theta{TrigPoly::harmonic_cos(2, k2, 1.0), TrigPoly(2)};
  CHECK(closedness_residual(theta) > 1.0);
  CHECK_THROWS_AS((void)pairing_mu(pi2, theta, basis_form(2, 1)),
                  NotClosedError);
  CHECK_THROWS_AS((void)cohomology_class(theta), NotClosedError);
}

TEST_CASE("four-torus pairing matrices take their hand-computed values") {
  // standard form: both pairings are the standard symplectic matrix up to
  // one global sign, so their entrywise ratio is -1
  const Eigen::MatrixXd w4 = omega_std(4);
  const PoissonTensor pi4 = PoissonTensor::constant(-w4.inverse());
  const Eigen::MatrixXd m4 = mu_matrix(pi4);
  const Eigen::MatrixXd s4 = sigma_matrix(w4);
  CHECK((m4 - w4).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((s4 + w4).cwiseAbs().maxCoeff() < 1e-13);

  // scaled form 2 dx1^dx2 + 3 dx3^dx4: the two pairings stay proportional
  // but the blockwise values swap scales
  Eigen::MatrixXd ws = Eigen::MatrixXd::Zero(4, 4);
  ws(0, 1) = 2.0;
  ws(1, 0) = -2.0;
  ws(2, 3) = 3.0;
  ws(3, 2) = -3.0;
  const PoissonTensor pis = PoissonTensor::constant(-ws.inverse());
  const Eigen::MatrixXd ms = mu_matrix(pis);
  const Eigen::MatrixXd ss = sigma_matrix(ws);
  CHECK(ms(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ms(2, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(ss(0, 1) == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(ss(2, 3) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(ss(0, 2) == doctest::Approx(0.0).epsilon(1e-14));

  // entrywise ratio on the support of m: -6 everywhere
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (std::abs(ms(i, j)) < 1e-12) {
        CHECK(std::abs(ss(i, j)) < 1e-12);
      } else {
        CHECK(ss(i, j) / ms(i, j) == doctest::Approx(-6.0).epsilon(1e-12));
      }
    }
}

TEST_CASE("pairing matrices are skew and invertible on symplectic data") {
  for (int dim : {2, 4}) {
    const PoissonTensor pi = PoissonTensor::constant(omega_std(dim));
    const Eigen::MatrixXd m = mu_matrix(pi);
    CHECK((m + m.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(m.determinant()) > 0.9);
  }
  // the zero tensor pairs everything to zero: singular by construction
  const Eigen::MatrixXd z = mu_matrix(PoissonTensor::zero(2));
  CHECK(z.cwiseAbs().maxCoeff() == 0.0);
}
