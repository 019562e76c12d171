// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "torusflux/flows/advect.hpp"
#include "torusflux/flows/isotopy.hpp"
#include "torusflux/flows/maplift.hpp"
#include "torusflux/spectral/poisson.hpp"

using namespace torusflux;
using namespace torusflux::spectral;
using namespace torusflux::flows;

namespace {


Eigen::MatrixXd omega2() {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, -1, 0;
  return w;
}

MapLift shear_lift(double scale) {
  // (x, y) -> (x + scale sin(2 pi y), y)
  const std::vector<int> k2{0, 1};
  std::vector<TrigPoly> u{TrigPoly::harmonic_sin(2, k2, scale), TrigPoly(2)};
  return MapLift(std::move(u));
}

std::vector<double> random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {u(rng), u(rng)};
}
}  // namespace

TEST_CASE("translations act by adding the vector") {
  const std::vector<double> c{0.3, -0.2};
  const MapLift t = MapLift::translation(c);
  CHECK(t.dim() == 2);
  CHECK_FALSE(t.is_identity());
  const auto y = t.apply(std::vector<double>{0.1, 0.5});
  CHECK(y[0] == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(y[1] == doctest::Approx(0.3).epsilon(1e-15));
  const Eigen::MatrixXd j = t.jacobian(std::vector<double>{0.1, 0.5});
  CHECK((j - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  const auto m = t.mean_disp();
  CHECK(m[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(m[1] == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(MapLift::identity(2).is_identity());
}

TEST_CASE("composition matches pointwise application") {
  const MapLift s = shear_lift(0.25);
  const MapLift t = MapLift::translation(std::vector<double>{0.3, -0.2});
  const MapLift st = compose(s, t);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto x = random_point(rng);
    const auto direct = s.apply(t.apply(x));
    const auto via = st.apply(x);
    CHECK(via[0] == doctest::Approx(direct[0]).epsilon(1e-10));
    CHECK(via[1] == doctest::Approx(direct[1]).epsilon(1e-10));
  }
  // jacobian chain rule at a point
  const std::vector<double> x0{0.2, 0.7};
  const Eigen::MatrixXd chain = s.jacobian(t.apply(x0)) * t.jacobian(x0);
  CHECK((st.jacobian(x0) - chain).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("inversion matches pointwise inversion") {
  const MapLift s = compose(shear_lift(0.2),
                            MapLift::translation(std::vector<double>{0.1, 0.4}));
  const MapLift si = inverse(s);
  std::mt19937 rng(19);
  for (int trial = 0; trial < 25; ++trial) {
    const auto x = random_point(rng);
    const auto y = si.apply(s.apply(x));
    CHECK(y[0] == doctest::Approx(x[0]).epsilon(1e-10));
    CHECK(y[1] == doctest::Approx(x[1]).epsilon(1e-10));
  }
  CHECK(sup_distance(compose(s, si), MapLift::identity(2)) < 1e-9);
}

TEST_CASE("area distortion is measured, not assumed") {
  const Eigen::MatrixXd w = omega2();
  CHECK(symplecto_residual(w, MapLift::translation(std::vector<double>{0.3, -0.2})) <
        1e-14);
  // any shear along one axis preserves the area form
  CHECK(symplecto_residual(w, shear_lift(0.35)) < 1e-12);
  // stretching one coordinate does not: (x + sin(2 pi x)/2, y)
  const std::vector<int> k1{1, 0};
  std::vector<TrigPoly> u{TrigPoly::harmonic_sin(2, k1, 0.5), TrigPoly(2)};
  CHECK(symplecto_residual(w, MapLift(std::move(u))) > 0.1);
}

TEST_CASE("advecting a constant field reproduces the translation") {
  const VectorField c{TrigPoly::constant(2, 0.3), TrigPoly::constant(2, -0.2)};
  const auto sampler = [&](double) { return c; };
  const MapLift flow = advect_map(sampler, 2, 0.0, 1.0, 16, 32);
  CHECK(sup_distance(flow, MapLift::translation(std::vector<double>{0.3, -0.2})) <
        1e-12);
  CHECK(flow.aliasing_residual() < 1e-12);
}

TEST_CASE("flows of hamiltonian fields preserve the form and the measure") {
  Eigen::MatrixXd p = omega2();  // the tensor paired with omega2 is omega2 itself
  const PoissonTensor pi2 = PoissonTensor::constant(p);
  const std::vector<int> k11{1, 1};
  const TrigPoly f = TrigPoly::harmonic_sin(2, k11, 0.08);
  const VectorField x = sharp(pi2, d(f));
  const auto sampler = [&](double) { return x; };
  const MapLift flow = advect_map(sampler, 2, 0.0, 1.0, 128, 64);
  CHECK(symplecto_residual(omega2(), flow) < 1e-8);

  // mean jacobian determinant over a probe grid stays 1
  double worst = 0.0;
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      const std::vector<double> pt{i / 16.0, j / 16.0};
      worst = std::max(worst, std::abs(flow.jacobian(pt).determinant() - 1.0));
    }
  CHECK(worst < 1e-8);
}

TEST_CASE("splitting the time interval composes to the whole flow") {
  const PoissonTensor pi2 = PoissonTensor::constant(omega2());
  const std::vector<int> k1{1, 0};
  const std::vector<int> k2{0, 1};
  const TrigPoly f = TrigPoly::harmonic_sin(2, k1, 0.02) *
                     TrigPoly::harmonic_sin(2, k2, 1.0);
  const VectorField xf = sharp(pi2, d(f));
  // a genuinely time-dependent field
  const auto sampler = [&](double t) { return xf * (1.0 + 0.5 * t); };
  const MapLift whole = advect_map(sampler, 2, 0.0, 1.0, 128, 64);
  const MapLift first = advect_map(sampler, 2, 0.0, 0.375, 48, 64);
  const MapLift second = advect_map(sampler, 2, 0.375, 1.0, 80, 64);
  CHECK(sup_distance(compose(second, first), whole) < 1e-8);
}

TEST_CASE("the time stepper converges at fourth order") {
  const PoissonTensor pi2 = PoissonTensor::constant(omega2());
  const std::vector<int> k1{1, 0};
  const std::vector<int> k2{0, 1};
  const TrigPoly f = TrigPoly::harmonic_sin(2, k1, 0.15) *
                     TrigPoly::harmonic_sin(2, k2, 1.0);
  const VectorField x = sharp(pi2, d(f));
  const auto sampler = [&](double) { return x; };
  const MapLift ref = advect_map(sampler, 2, 0.0, 1.0, 320, 64);
  const double e20 = sup_distance(advect_map(sampler, 2, 0.0, 1.0, 20, 64), ref);
  const double e40 = sup_distance(advect_map(sampler, 2, 0.0, 1.0, 40, 64), ref);
  CHECK(e20 / e40 > std::pow(2.0, 3.8));
}

TEST_CASE("family endpoints and velocities are consistent") {
  const std::vector<int> k2{0, 1};
  const TrigPoly g = TrigPoly::harmonic_sin(2, k2, 0.1) +
                     TrigPoly::constant(2, 0.05);
  const ShearIsotopy shear(0, g);
  CHECK(shear.lift_at(0.0).is_identity());
  const MapLift half = shear.lift_at(0.5);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_point(rng);
    const auto y = half.apply(x);
    CHECK(y[0] == doctest::Approx(x[0] + 0.5 * g.eval(x)).epsilon(1e-13));
    CHECK(y[1] == doctest::Approx(x[1]).epsilon(1e-15));
  }
  const auto vel = shear.eulerian(0.3);
  REQUIRE(vel.has_value());
  CHECK((*vel)[0].max_band() == 1);
  CHECK((*vel)[1].is_zero());

  // profiles depending on the sheared axis are not a valid shear
  const std::vector<int> k1{1, 0};
  CHECK_THROWS_AS(ShearIsotopy(0, TrigPoly::harmonic_sin(2, k1, 0.1)),
                  DimError);
  CHECK_THROWS_AS(ShearIsotopy(5, g), AxisError);
  CHECK_THROWS_AS((void)shear.lift_at(1.5), TimeError);
}

TEST_CASE("flow families cache their node lifts consistently") {
  const PoissonTensor pi2 = PoissonTensor::constant(omega2());
  const std::vector<int> k11{1, 1};
  const TrigPoly f = TrigPoly::harmonic_sin(2, k11, 0.1);
  const VectorField x = sharp(pi2, d(f));
  const FlowIsotopy iso(x, 32, 48);
  const auto sampler = [&](double) { return x; };
  // node 8 of 32 is the quarter-time flow
  const MapLift direct = advect_map(sampler, 2, 0.0, 0.25, 8, 48);
  CHECK(sup_distance(iso.lift_at(0.25), direct) < 1e-10);
  const auto vel = iso.eulerian(0.7);
  REQUIRE(vel.has_value());
  CHECK(sup_bound(*vel - x) < 1e-13);
}

TEST_CASE("concatenation runs the halves at double speed") {
  const TranslationIsotopy a(std::vector<double>{0.2, 0.0});
  const TranslationIsotopy b(std::vector<double>{0.0, 0.4});
  // the second leg must take over where the first one stops
  const auto b_from_a = based_at(b, a.lift_at(1.0));
  const auto ab = star_concat(a, *b_from_a);
  CHECK(ab->breakpoints() == std::vector<double>{0.5});
  // t = 0.25 is halfway through the first leg
  const auto q = ab->lift_at(0.25).mean_disp();
  CHECK(q[0] == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(q[1] == doctest::Approx(0.0).epsilon(1e-13));
  // t = 0.75 has the whole first leg and half the second
  const auto h = ab->lift_at(0.75).mean_disp();
  CHECK(h[0] == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(h[1] == doctest::Approx(0.2).epsilon(1e-13));
  // velocities double: the first leg runs at 2 c_a
  const auto v = ab->eulerian(0.2);
  REQUIRE(v.has_value());
  CHECK((*v)[0].mean() == doctest::Approx(0.4).epsilon(1e-13));
  const auto w = ab->eulerian(0.8);
  REQUIRE(w.has_value());
  CHECK((*w)[1].mean() == doctest::Approx(0.8).epsilon(1e-13));

  // legs must meet: b starts at the identity, a ends elsewhere
  CHECK_THROWS_AS((void)star_concat(b, a), GateError);
}

TEST_CASE("rebasing shifts the whole family by a fixed map") {
  const TranslationIsotopy a(std::vector<double>{0.2, 0.0});
  const MapLift base = MapLift::translation(std::vector<double>{0.0, 0.3});
  const auto shifted = based_at(a, base);
  const auto m = shifted->lift_at(1.0).mean_disp();
  CHECK(m[0] == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(m[1] == doctest::Approx(0.3).epsilon(1e-13));
  // the velocity field is untouched by rebasing
  const auto v = shifted->eulerian(0.4);
  REQUIRE(v.has_value());
  CHECK((*v)[0].mean() == doctest::Approx(0.2).epsilon(1e-13));
  CHECK((*v)[1].mean() == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("reversal plays the family backwards from its endpoint") {
  const TranslationIsotopy a(std::vector<double>{0.2, -0.1});
  const auto rev = reversed(a);
  CHECK(rev->lift_at(0.0).is_identity());
  const auto e = rev->lift_at(1.0).mean_disp();
  CHECK(e[0] == doctest::Approx(-0.2).epsilon(1e-13));
  CHECK(e[1] == doctest::Approx(0.1).epsilon(1e-13));
  const auto v = rev->eulerian(0.5);
  REQUIRE(v.has_value());
  CHECK((*v)[0].mean() == doctest::Approx(-0.2).epsilon(1e-13));
}

TEST_CASE("sampled families answer only on their node grid") {
  const TranslationIsotopy a(std::vector<double>{0.4, 0.0});
  const SampledIsotopy s = sample_isotopy(a, 8);
  CHECK(s.nslices() == 9);
  const auto m = s.lift_at(0.375).mean_disp();  // node 3 of 8
  CHECK(m[0] == doctest::Approx(0.15).epsilon(1e-13));
  CHECK_THROWS_AS((void)s.lift_at(0.3), GridError);
  // sampled families do not fabricate a velocity field
  CHECK_FALSE(s.eulerian(0.375).has_value());
}
