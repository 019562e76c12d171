// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Core>
#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "torusflux/groupoid/bisection.hpp"
#include "torusflux/groupoid/flux.hpp"
#include "torusflux/groupoid/holonomy.hpp"
#include "torusflux/groupoid/integral_maps.hpp"
#include "torusflux/groupoid/model.hpp"

using namespace torusflux;
using namespace torusflux::spectral;
using namespace torusflux::flows;
using namespace torusflux::groupoid;

namespace {


const GroupoidModel& t2() {
  static const GroupoidModel m = GroupoidModel::standard_torus(2);
  return m;
}

}  // namespace

TEST_CASE("the standard model fixes its matrices and charts") {
  const GroupoidModel& m = t2();
  CHECK(m.dim() == 2);
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, -1, 0;
  CHECK((m.omega() - w).cwiseAbs().maxCoeff() == 0.0);
  // the tensor inverts the form with a sign; for this form that is the
  // form itself
  CHECK((m.pi().constant_part() - w).cwiseAbs().maxCoeff() < 1e-15);

  // source and target split the fiber displacement evenly
  const std::vector<double> x{0.5, 0.5};
  const std::vector<double> p{0.2, 0.0};
  const auto a = m.alpha(x, p);
  const auto b = m.beta(x, p);
  CHECK(a[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(b[1] == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS((void)GroupoidModel::zero_poisson(2).omega(), DimError);
  CHECK_THROWS_AS((void)GroupoidModel::standard_torus(3), DimError);
}

TEST_CASE("the momentum form of a translation is the contracted form") {
  // velocity c contracted into the form gives theta_j = sum_i c_i Omega_ij,
  // a constant form: for c = (0.3, -0.2), theta = (0.2, 0.3)
  const TranslationIsotopy iso(std::vector<double>{0.3, -0.2});
  for (double t : {0.0, 0.37, 1.0}) {
    const OneForm th = theta_t(t2(), iso, t);
    REQUIRE(th.size() == 2);
    CHECK(th[0].mean() == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(th[1].mean() == doctest::Approx(0.3).epsilon(1e-13));
    CHECK((th[0] - TrigPoly::constant(2, 0.2)).l1() < 1e-12);
    CHECK((th[1] - TrigPoly::constant(2, 0.3)).l1() < 1e-12);
  }
}

TEST_CASE("translation families have constant-form flux") {
  const TranslationIsotopy iso(std::vector<double>{0.3, -0.2});
  const FluxResult r = flux(t2(), iso);
  REQUIRE(r.value.dim() == 2);
  CHECK(r.value.coeffs(0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r.value.coeffs(1) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.max_closedness < 1e-12);
  CHECK(r.quad_check < 1e-12);

  // prefix values scale linearly in time
  const FluxResult half = flux_prefix(t2(), iso, 0.5);
  CHECK(half.value.coeffs(0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(half.value.coeffs(1) == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("families must start at the identity") {
  const TranslationIsotopy iso(std::vector<double>{0.3, -0.2});
  const auto shifted =
      based_at(iso, MapLift::translation(std::vector<double>{0.1, 0.0}));
  CHECK_THROWS_AS((void)flux(t2(), *shifted), GateError);
}

TEST_CASE("gradient-generated families carry no flux") {
  const std::vector<int> k1{1, 0};
  const TrigPoly f = TrigPoly::harmonic_sin(2, k1, 0.1);
  const VectorField x = sharp(t2().pi(), d(f));
  const FlowIsotopy iso(x, 48, 48);
  FluxOptions fo;
  fo.steps = 48;
  const FluxResult r = flux(t2(), iso, fo);
  CHECK(std::abs(r.value.coeffs(0)) < 1e-9);
  CHECK(std::abs(r.value.coeffs(1)) < 1e-9);

  const ExactnessReport rep = exactness_verdict(t2(), iso, 1e-8, 6, fo);
  CHECK(rep.hamiltonian_path);
  for (double h : rep.endpoint_holonomy)
    CHECK(std::abs(h) < 1e-6);
}

TEST_CASE("the exponential of a constant form is a translation family") {
  const OneForm theta = constant_one_form(std::vector<double>{1.0, 0.0});
  const auto path = exp_bisection_path(theta, t2(), 32);
  // sharp of (1, 0) under the standard tensor is (0, -1)
  const auto m = path->lift_at(0.5).mean_disp();
  CHECK(m[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m[1] == doctest::Approx(-0.5).epsilon(1e-12));

  // prefix flux at T recovers T times the class of the form
  FluxOptions fo;
  fo.steps = 32;
  const FluxResult q = flux_prefix(t2(), *path, 0.5, fo);
  CHECK(q.value.coeffs(0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(q.value.coeffs(1)) < 1e-9);
}

TEST_CASE("lagrangian sections gate on the preserved form") {
  const MapLift good = MapLift::translation(std::vector<double>{0.25, 0.1});
  CHECK_NOTHROW((void)Bisection::from_lift(t2(), good));

  const std::vector<int> k1{1, 0};
  std::vector<TrigPoly> u{TrigPoly::harmonic_sin(2, k1, 0.5), TrigPoly(2)};
  const MapLift bad(std::move(u));
  CHECK_THROWS_AS((void)Bisection::from_lift(t2(), bad), GateError);
  try {
    (void)Bisection::from_lift(t2(), bad);
  } catch (const GateError& e) {
    CHECK(e.residual > 0.1);
  }
}

TEST_CASE("endpoint averages determine the flux through the pairing") {
  const std::vector<double> c{0.3, -0.2};
  const Bisection l = Bisection::from_lift(t2(), MapLift::translation(c));

  const Eigen::VectorXd lam = lambda_map(t2(), l);
  CHECK(lam(0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(lam(1) == doctest::Approx(-0.2).epsilon(1e-14));
  const Eigen::VectorXd eps = epsilon(t2(), l);
  CHECK((eps + lam).cwiseAbs().maxCoeff() < 1e-14);

  const auto f = flux_via_lambda(t2(), l);
  CHECK(f.coeffs(0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(f.coeffs(1) == doctest::Approx(0.3).epsilon(1e-12));

  // composing translation sections adds their endpoint averages
  const Bisection k =
      Bisection::from_lift(t2(), MapLift::translation(std::vector<double>{0.1, 0.2}));
  const Bisection lk = compose_bisections(t2(), l, k);
  const Eigen::VectorXd both = epsilon(t2(), lk);
  CHECK((both - (epsilon(t2(), l) + epsilon(t2(), k))).cwiseAbs().maxCoeff() <
        1e-12);
  const Bisection li = inverse_bisection(t2(), l);
  CHECK((epsilon(t2(), li) + epsilon(t2(), l)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cocycle pairings ignore coboundary parts") {
  const std::vector<int> k1{1, 0};
  const std::vector<int> k2{0, 1};
  const TrigPoly g = TrigPoly::harmonic_sin(2, k2, 0.1) +
                     TrigPoly::constant(2, 0.05);
  const Bisection l = Bisection::from_lift(t2(), ShearIsotopy(0, g).lift_at(1.0));

  Eigen::VectorXd lin(2);
  lin << 0.7, -0.3;
  GroupoidCocycle plain{lin, TrigPoly(2)};
  GroupoidCocycle dressed{lin, TrigPoly::harmonic_cos(2, k1, 0.2) +
                                   TrigPoly::harmonic_sin(2, k2, 0.1)};
  const double a = epsilon_pairing(t2(), l, plain);
  const double b = epsilon_pairing(t2(), l, dressed);
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
  CHECK(a == doctest::Approx(lin.dot(epsilon(t2(), l))).epsilon(1e-10));
}

TEST_CASE("holonomy of a translation section is the linear pairing") {
  const std::vector<double> c{0.3, -0.2};
  const Bisection l = Bisection::from_lift(t2(), MapLift::translation(c));
  // the flux class is (0.2, 0.3); pairing with the generator loops mod 1
  CHECK(circle_dist(holonomy_phi(t2(), l, std::vector<int>{1, 0}), 0.2) < 1e-10);
  CHECK(circle_dist(holonomy_phi(t2(), l, std::vector<int>{0, 1}), 0.3) < 1e-10);

  const Bisection id = Bisection::identity(t2());
  CHECK(std::abs(holonomy_phi(t2(), id, std::vector<int>{1, 0})) < 1e-12);
  CHECK(std::abs(holonomy_phi(t2(), id, std::vector<int>{0, 1})) < 1e-12);
}

TEST_CASE("circle arithmetic wraps into the fundamental window") {
  CHECK(circle_wrap(0.75) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(circle_wrap(-0.5) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(circle_wrap(3.2) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(circle_dist(0.9, 0.1) == doctest::Approx(0.2).epsilon(1e-13));
  Eigen::VectorXd v(2);
  v << 0.2, 0.3;
  algebra::CohomologyClass cls{v};
  CHECK(rho(cls, std::vector<int>{1, 0}) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(rho(cls, std::vector<int>{-1, 1}) == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("the flat model pairs sections but cannot invert") {
  const GroupoidModel flat = GroupoidModel::zero_poisson(2);
  const Bisection id = Bisection::identity(flat);
  CHECK(id.form().size() == 2);
  CHECK_THROWS_AS((void)id.lift(), DimError);
  CHECK_THROWS_AS((void)flux_via_lambda(flat, id), NumericalError);

  // adding section forms is the groupoid product in this model
  const OneForm theta = constant_one_form(std::vector<double>{0.4, 0.1});
  const Bisection a = Bisection::from_form(flat, theta);
  const Bisection aa = compose_bisections(flat, a, a);
  CHECK(aa.form()[0].mean() == doctest::Approx(0.8).epsilon(1e-14));

  // non-closed forms are rejected at the door
  const std::vector<int> k2{0, 1};
  OneForm bad{TrigPoly::harmonic_cos(2, k2, 1.0), TrigPoly(2)};
  CHECK_THROWS_AS((void)Bisection::from_form(flat, bad), NotClosedError);
}

TEST_CASE("transported loops follow the section downstairs") {
  const MapLift psi = MapLift::translation(std::vector<double>{0.3, -0.2});
  const LoopSampler loop = transported_loop(psi, std::vector<int>{1, 0});
  const LoopPoint p0 = loop(0.0);
  CHECK(p0.x[0] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(p0.x[1] == doctest::Approx(-0.2).epsilon(1e-14));
  const LoopPoint pq = loop(0.25);
  CHECK(pq.x[0] == doctest::Approx(0.55).epsilon(1e-14));
  CHECK(pq.dx[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pq.dx[1] == doctest::Approx(0.0).epsilon(1e-14));
}
