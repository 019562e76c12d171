// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "torusflux/spectral/expr.hpp"
#include "torusflux/spectral/grid.hpp"
#include "torusflux/spectral/trigpoly.hpp"

using namespace torusflux;
using namespace torusflux::spectral;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<double> random_point(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (auto& v : x) v = u(rng);
  return x;
}

// A fixed two-variable example used throughout: every expected value below
// is computed from this closed form, not from the library.
double reference_f(double x, double y) {
  return 1.5 + 0.7 * std::cos(kTwoPi * (2.0 * x - y)) +
         0.3 * std::sin(kTwoPi * (x + 3.0 * y));
}

TrigPoly build_reference_f() {
  const std::vector<int> k1{2, -1};
  const std::vector<int> k2{1, 3};
  TrigPoly f = TrigPoly::constant(2, 1.5);
  f += TrigPoly::harmonic_cos(2, k1, 0.7);
  f += TrigPoly::harmonic_sin(2, k2, 0.3);
  return f;
}

}  // namespace

TEST_CASE("evaluation matches the defining trigonometric sum") {
  const TrigPoly f = build_reference_f();
  CHECK(f.check_invariants());
  CHECK(f.max_band() == 3);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_point(rng, 2);
    CHECK(f.eval(x) == doctest::Approx(reference_f(x[0], x[1])).epsilon(1e-13));
  }
  // zero mode and integral are the constant term
  CHECK(f.mean() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(tp_integrate(f) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("grid sampling agrees with direct evaluation") {
  const TrigPoly f = build_reference_f();
  const int N = 16;
  const auto g = to_grid(f, N);
  REQUIRE(g.size() == static_cast<std::size_t>(N * N));
  // row-major, axis 0 slowest
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const std::vector<double> x{static_cast<double>(i) / N,
                                  static_cast<double>(j) / N};
      CHECK(g[static_cast<std::size_t>(i * N + j)] ==
            doctest::Approx(f.eval(x)).epsilon(1e-12));
    }
}

TEST_CASE("grid projection inverts grid sampling") {
  const TrigPoly f = build_reference_f();
  const auto r = to_coeffs(to_grid(f, 16), 2, 16, 4);
  CHECK(r.aliasing_l2 == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(max_abs_coeff_diff(r.poly, f) < 1e-13);
}

TEST_CASE("product matches pointwise multiplication") {
  std::mt19937 rng(11);
  const std::vector<int> ka{1, 2};
  const std::vector<int> kb{3, -1};
  const TrigPoly a =
      TrigPoly::harmonic_cos(2, ka, 0.8) + TrigPoly::constant(2, 0.2);
  const TrigPoly b =
      TrigPoly::harmonic_sin(2, kb, 1.1) + TrigPoly::constant(2, -0.4);
  const TrigPoly ab = a * b;
  CHECK(ab.check_invariants());
  CHECK(ab.max_band() <= a.max_band() + b.max_band());
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_point(rng, 2);
    CHECK(ab.eval(x) == doctest::Approx(a.eval(x) * b.eval(x)).epsilon(1e-12));
  }
}

TEST_CASE("derivative matches a five-point difference stencil") {
  const TrigPoly f = build_reference_f();
  const TrigPoly fx = tp_diff(f, 0);
  const TrigPoly fy = tp_diff(f, 1);
  std::mt19937 rng(13);
  const double h = 1e-3;
  const auto stencil = [&](const TrigPoly& g, std::vector<double> x, int axis) {
    const auto at = [&](double delta) {
      auto y = x;
      y[static_cast<std::size_t>(axis)] += delta;
      return g.eval(y);
    };
    return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_point(rng, 2);
    CHECK(fx.eval(x) == doctest::Approx(stencil(f, x, 0)).epsilon(1e-6));
    CHECK(fy.eval(x) == doctest::Approx(stencil(f, x, 1)).epsilon(1e-6));
  }
  // derivatives kill the zero mode
  CHECK(fx.mean() == doctest::Approx(0.0).epsilon(1e-15));
  // constant functions have zero derivative
  CHECK(tp_diff(TrigPoly::constant(2, 3.0), 0).is_zero());
}

TEST_CASE("integral equals the dense lattice average") {
  const TrigPoly f = build_reference_f();
  const int N = 32;  // rectangle rule is exact once N exceeds the band
  double acc = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const std::vector<double> x{static_cast<double>(i) / N,
                                  static_cast<double>(j) / N};
      acc += f.eval(x);
    }
  CHECK(tp_integrate(f) == doctest::Approx(acc / (N * N)).epsilon(1e-13));
}

TEST_CASE("coefficients come in conjugate mirror pairs") {
  const TrigPoly f = build_reference_f();
  const std::vector<int> k{2, -1};
  const std::vector<int> mk{-2, 1};
  const auto c = f.coeff(k);
  const auto cm = f.coeff(mk);
  CHECK(c.real() == doctest::Approx(0.35).epsilon(1e-15));  // 0.7 cos -> 0.35
  CHECK(std::abs(c - std::conj(cm)) < 1e-16);
  const std::vector<int> k2{1, 3};
  // 0.3 sin -> -0.15 i at +k
  CHECK(f.coeff(k2).imag() == doctest::Approx(-0.15).epsilon(1e-15));
}

TEST_CASE("from_terms completes mirrors and rejects inconsistent ones") {
  using C = std::complex<double>;
  const TrigPoly f =
      TrigPoly::from_terms(2, {{{1, 0}, C(0.5, -0.25)}});
  CHECK(f.check_invariants());
  CHECK(std::abs(f.coeff(std::vector<int>{-1, 0}) - C(0.5, 0.25)) < 1e-16);
  std::mt19937 rng(3);
  const auto x = random_point(rng, 2);
  const double expected = 2 * 0.5 * std::cos(kTwoPi * x[0]) +
                          2 * 0.25 * std::sin(kTwoPi * x[0]);
  CHECK(f.eval(x) == doctest::Approx(expected).epsilon(1e-13));
  CHECK_THROWS_AS(
      TrigPoly::from_terms(
          2, {{{1, 0}, C(0.5, 0.0)}, {{-1, 0}, C(0.25, 0.0)}}),
      GridError);
}

TEST_CASE("products past the bandwidth cap need explicit consent") {
  const std::vector<int> ka{40, 0};
  const std::vector<int> kb{0, 40};
  const TrigPoly a = TrigPoly::harmonic_cos(2, ka, 1.0) +
                     TrigPoly::harmonic_cos(2, std::vector<int>{1, 0}, 0.5);
  const TrigPoly b = TrigPoly::harmonic_sin(2, kb, 1.0) +
                     TrigPoly::harmonic_sin(2, std::vector<int>{0, 1}, 0.5);
  CHECK_THROWS_AS((void)mul(a, b), BandwidthError);

  const int cap = 20;
  const auto t = mul_truncated(a, b, cap);
  CHECK(t.poly.max_band() <= cap);
  // Tail accounting oracle: the full product at a generous cap, minus the
  // kept part, must carry exactly the reported L^2 mass.
  const TrigPoly full = mul(a, b, 100);
  const TrigPoly tail = full - t.poly;
  CHECK(t.discarded_l2 > 0.1);  // the high-band clusters really were dropped
  CHECK(t.discarded_l2 == doctest::Approx(tail.l2()).epsilon(1e-12));
  CHECK(std::abs(t.poly.coeff(std::vector<int>{1, 1}) -
                 full.coeff(std::vector<int>{1, 1})) < 1e-15);
}

TEST_CASE("expressions parse to exact coefficients") {
  const TrigPoly f = parse_expression("1+0.5*cos(2*pi*(1,0).x)", 2);
  CHECK(f.mean() == doctest::Approx(1.0).epsilon(1e-15));
  // 0.5 cos splits into 0.25 at each mirror frequency
  CHECK(f.coeff(std::vector<int>{1, 0}).real() ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(f.coeff(std::vector<int>{1, 0}).imag() == 0.0);

  const TrigPoly g = parse_expression("0.2*sin(2*pi*(1,1).x)", 2);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_point(rng, 2);
    CHECK(g.eval(x) ==
          doctest::Approx(0.2 * std::sin(kTwoPi * (x[0] + x[1])))
              .epsilon(1e-13));
  }
}

TEST_CASE("formatted expressions parse back to the same function") {
  const TrigPoly f = build_reference_f();
  const TrigPoly back = parse_expression(format_expression(f), 2);
  CHECK(max_abs_coeff_diff(back, f) < 1e-12);
}

TEST_CASE("degenerate harmonics collapse as documented") {
  const std::vector<int> zero{0, 0};
  CHECK(TrigPoly::harmonic_sin(2, zero, 2.0).is_zero());
  const TrigPoly c = TrigPoly::harmonic_cos(2, zero, 2.0);
  CHECK(c.term_count() == 1);
  CHECK(c.mean() == doctest::Approx(2.0).epsilon(1e-15));
}
