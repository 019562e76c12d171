// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "torusflux/algebra/cohomology.hpp"
#include "torusflux/algebra/koszul.hpp"
#include "torusflux/algebra/pairings.hpp"
#include "torusflux/algebra/sampling.hpp"
#include "torusflux/cli/run.hpp"
#include "torusflux/common.hpp"
#include "torusflux/flows/advect.hpp"
#include "torusflux/flows/isotopy.hpp"
#include "torusflux/groupoid/flux.hpp"
#include "torusflux/groupoid/holonomy.hpp"
#include "torusflux/groupoid/integral_maps.hpp"
#include "torusflux/groupoid/model.hpp"
#include "torusflux/spectral/grid.hpp"

namespace torusflux::cli {
namespace {

using algebra::CohomologyClass;
using algebra::ExtElement;
using flows::MapLift;
using groupoid::Bisection;
using groupoid::FluxOptions;
using groupoid::GroupoidModel;
using spectral::OneForm;
using spectral::PoissonTensor;
using spectral::TrigPoly;
using spectral::VectorField;

struct Collector {
  std::vector<SuiteCheck> checks;
  void below(std::string name, double residual, double tol) {
    if (std::getenv("TORUSFLUX_DEBUG_SUITE"))
      std::fprintf(stderr, "[suite] %s %.3e (tol %.1e)\n", name.c_str(),
                   residual, tol);
    checks.push_back({std::move(name), residual, tol, residual < tol});
  }
  void at_least(std::string name, double value, double tol) {
    checks.push_back({std::move(name), value, tol, value >= tol});
  }
  void gated(std::string name, double residual, double tol, bool pass) {
    checks.push_back({std::move(name), residual, tol, pass});
  }
};

double eig_inf(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

double unif(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Shear profile on T^2 depending only on the complementary coordinate.
// Single shear lifts preserve omega exactly at any amplitude; what the
// amplitude controls is the spectral tail of *composed* shears, which must
// stay below the lagrangian gate once reprojected. These sizes leave the
// composite representable to ~1e-11.
TrigPoly shear_profile(int axis, std::mt19937& rng) {
  const int other = 1 - axis;
  TrigPoly g = TrigPoly::constant(2, unif(rng, -0.05, 0.05));
  for (int k = 1; k <= 2; ++k) {
    std::vector<int> kk(2, 0);
    kk[static_cast<std::size_t>(other)] = k;
    g += TrigPoly::harmonic_cos(2, kk, unif(rng, -0.025, 0.025));
    g += TrigPoly::harmonic_sin(2, kk, unif(rng, -0.025, 0.025));
  }
  return g;
}

std::unique_ptr<flows::Isotopy> random_member(const GroupoidModel& t2, int sel,
                                              std::mt19937& rng) {
  switch (sel % 3) {
    case 0:
      return std::make_unique<flows::TranslationIsotopy>(
          std::vector<double>{unif(rng, -0.5, 0.5), unif(rng, -0.5, 0.5)});
    case 1: {
      const int axis = sel % 2;
      return std::make_unique<flows::ShearIsotopy>(axis,
                                                   shear_profile(axis, rng));
    }
    default: {
      const TrigPoly f = algebra::random_trigpoly(2, 2, rng, 0.001);
      return std::make_unique<flows::FlowIsotopy>(
          spectral::sharp(t2.pi(), spectral::d(f)), 48, 48);
    }
  }
}

MapLift random_sympl_lift(int sel, std::mt19937& rng) {
  switch (sel % 3) {
    case 0:
      return MapLift::translation(
          std::vector<double>{unif(rng, -0.5, 0.5), unif(rng, -0.5, 0.5)});
    case 1: {
      const int axis = sel % 2;
      return flows::ShearIsotopy(axis, shear_profile(axis, rng)).lift_at(1.0);
    }
    default:
      return flows::compose(
          flows::ShearIsotopy(0, shear_profile(0, rng)).lift_at(1.0),
          flows::ShearIsotopy(1, shear_profile(1, rng)).lift_at(1.0));
  }
}

bool is_generator(const Eigen::VectorXd& v, double tol) {
  int hits = 0;
  for (int i = 0; i < v.size(); ++i) {
    const double r = std::abs(v(i));
    if (std::abs(r - 1.0) < tol)
      ++hits;
    else if (r > tol)
      return false;
  }
  return hits == 1;
}

void spectral_checks(Collector& c, std::mt19937& rng) {
  // Grid samples match pointwise evaluation.
  {
    const TrigPoly f = algebra::random_trigpoly(2, 5, rng, 1.0);
    const int n = 64;
    const std::vector<double> g = spectral::to_grid(f, n);
    double worst = 0.0;
    for (int probe = 0; probe < 32; ++probe) {
      const int i = static_cast<int>(rng() % static_cast<unsigned>(n));
      const int j = static_cast<int>(rng() % static_cast<unsigned>(n));
      const std::vector<double> x = {double(i) / n, double(j) / n};
      worst = std::max(worst, std::abs(g[static_cast<std::size_t>(i * n + j)] -
                                       f.eval(x)));
    }
    c.below("grid_matches_pointwise_eval", worst, 1e-12);
  }
  // Convolution product against the pointwise oracle.
  {
    const TrigPoly a = algebra::random_trigpoly(2, 5, rng, 0.5);
    const TrigPoly b = algebra::random_trigpoly(2, 5, rng, 0.5);
    const TrigPoly ab = a * b;
    double worst = 0.0;
    for (int probe = 0; probe < 32; ++probe) {
      const std::vector<double> x = {unif(rng, 0.0, 1.0), unif(rng, 0.0, 1.0)};
      worst = std::max(worst, std::abs(ab.eval(x) - a.eval(x) * b.eval(x)));
    }
    c.below("product_matches_grid_oracle", worst, 1e-12);
  }
  // d(ab) = (da) b + a (db).
  {
    const TrigPoly a = algebra::random_trigpoly(2, 3, rng, 0.5);
    const TrigPoly b = algebra::random_trigpoly(2, 3, rng, 0.5);
    double worst = 0.0;
    for (int axis = 0; axis < 2; ++axis)
      worst = std::max(worst, (spectral::tp_diff(a * b, axis) -
                               spectral::tp_diff(a, axis) * b -
                               a * spectral::tp_diff(b, axis))
                                  .l1());
    c.below("derivative_leibniz", worst, 1e-10);
  }
  // d o d = 0 on functions.
  {
    const TrigPoly f = algebra::random_trigpoly(3, 3, rng, 1.0);
    c.below("d_squared_zero", spectral::sup_bound(spectral::d(spectral::d(f))),
            1e-10);
  }
}

void algebra_checks(Collector& c, std::mt19937& rng, const PoissonTensor& pi2) {
  // {sin(2 pi x1), sin(2 pi x2)} against the hand-expanded value.
  {
    const std::vector<int> e1 = {1, 0}, e2 = {0, 1};
    const TrigPoly f = TrigPoly::harmonic_sin(2, e1, 1.0);
    const TrigPoly g = TrigPoly::harmonic_sin(2, e2, 1.0);
    const TrigPoly oracle =
        TrigPoly::harmonic_cos(2, e1, 1.0) * TrigPoly::harmonic_cos(2, e2, 1.0) *
        (-4.0 * M_PI * M_PI);
    c.below("coordinate_bracket_oracle",
            (spectral::poisson_bracket(pi2, f, g) - oracle).l1(), 1e-12);
  }
  // {f, gh} = {f, g} h + g {f, h}.
  {
    const TrigPoly f = algebra::random_trigpoly(2, 2, rng, 0.3);
    const TrigPoly g = algebra::random_trigpoly(2, 2, rng, 0.3);
    const TrigPoly h = algebra::random_trigpoly(2, 2, rng, 0.3);
    const TrigPoly lhs = spectral::poisson_bracket(pi2, f, g * h);
    const TrigPoly rhs = spectral::poisson_bracket(pi2, f, g) * h +
                         g * spectral::poisson_bracket(pi2, f, h);
    c.below("poisson_leibniz", (lhs - rhs).l1(), 1e-10);
  }
  // d{f, g} = [df, dg], coefficient for coefficient.
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const TrigPoly f = algebra::random_trigpoly(2, 2, rng, 0.25);
      const TrigPoly g = algebra::random_trigpoly(2, 2, rng, 0.25);
      const OneForm lhs = spectral::d(spectral::poisson_bracket(pi2, f, g));
      const OneForm rhs =
          algebra::koszul_bracket(pi2, spectral::d(f), spectral::d(g));
      worst = std::max(worst, spectral::sup_bound(lhs - rhs));
    }
    c.below("d_bracket_compatibility", worst, 1e-11);
  }
  // Jacobi identity on closed one-forms. The cyclic sum cancels double
  // brackets whose coefficient mass grows cubically with the amplitude, so
  // the amplitude is kept small enough that accumulated roundoff under the
  // cancellation stays well inside the gate.
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const OneForm a = algebra::random_closed_one_form(2, 3, rng, 0.08);
      const OneForm b = algebra::random_closed_one_form(2, 3, rng, 0.08);
      const OneForm d3 = algebra::random_closed_one_form(2, 3, rng, 0.08);
      const OneForm cyc =
          algebra::koszul_bracket(pi2, algebra::koszul_bracket(pi2, a, b), d3) +
          algebra::koszul_bracket(pi2, algebra::koszul_bracket(pi2, b, d3), a) +
          algebra::koszul_bracket(pi2, algebra::koszul_bracket(pi2, d3, a), b);
      worst = std::max(worst, spectral::sup_bound(cyc));
    }
    c.below("koszul_jacobi_closed_forms", worst, 1e-9);
  }
  // [Z^1, Z^1] lands in exact forms.
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const OneForm a = algebra::random_closed_one_form(2, 3, rng, 0.3);
      const OneForm b = algebra::random_closed_one_form(2, 3, rng, 0.3);
      const OneForm br = algebra::koszul_bracket(pi2, a, b);
      worst = std::max(worst, std::max(algebra::closedness_residual(br),
                                       algebra::exactness_residual(br)));
    }
    c.below("closed_bracket_lands_exact", worst, 1e-10);
  }
  // Jacobi identity for the centrally extended bracket.
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      ExtElement e[3];
      for (auto& x : e)
        x = ExtElement{algebra::random_closed_one_form(2, 3, rng, 0.08),
                       algebra::random_trigpoly(2, 2, rng, 0.08)};
      const ExtElement t1 = algebra::central_ext_bracket(
          pi2, algebra::central_ext_bracket(pi2, e[0], e[1]), e[2]);
      const ExtElement t2 = algebra::central_ext_bracket(
          pi2, algebra::central_ext_bracket(pi2, e[1], e[2]), e[0]);
      const ExtElement t3 = algebra::central_ext_bracket(
          pi2, algebra::central_ext_bracket(pi2, e[2], e[0]), e[1]);
      const OneForm zsum = t1.zeta + t2.zeta + t3.zeta;
      const TrigPoly fsum = t1.f + t2.f + t3.f;
      worst = std::max(worst, spectral::sup_bound(zsum) + fsum.l1());
    }
    c.below("central_extension_jacobi", worst, 1e-9);
  }
  // (-df, f), (-dg, g) bracket to (-dh, h) with h = -{f, g}.
  {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const TrigPoly f = algebra::random_trigpoly(2, 2, rng, 0.3);
      const TrigPoly g = algebra::random_trigpoly(2, 2, rng, 0.3);
      const ExtElement r = algebra::central_ext_bracket(
          pi2, ExtElement{spectral::d(f) * -1.0, f},
          ExtElement{spectral::d(g) * -1.0, g});
      const TrigPoly h = spectral::poisson_bracket(pi2, f, g) * -1.0;
      worst = std::max(worst,
                       spectral::sup_bound(r.zeta - spectral::d(h) * -1.0) +
                           (r.f - h).l1());
    }
    c.below("central_extension_exact_pairs", worst, 1e-10);
  }
  // The 0 -> R -> C^inf -> Z^1 -> H^1 -> 0 chain closes.
  c.below("exact_sequence_chain",
          algebra::exact_sequence_report(pi2).max_residual(), 1e-10);
  // A tensor that fails Jacobi is detected and refused.
  {
    std::vector<TrigPoly> up;
    up.push_back(TrigPoly::constant(3, 1.0) +
                 TrigPoly::harmonic_cos(3, std::vector<int>{0, 0, 1}, 0.5));
    up.push_back(TrigPoly::harmonic_sin(3, std::vector<int>{1, 0, 0}, 0.5));
    up.push_back(TrigPoly(3));
    const PoissonTensor bad = PoissonTensor::from_upper(3, std::move(up));
    const double r = bad.jacobi_residual();
    bool threw = false;
    try {
      bad.require_poisson();
    } catch (const GateError&) {
      threw = true;
    }
    c.gated("nonjacobi_tensor_detected", r, 0.1, r > 0.1 && threw);
  }
  // Constant tensors short-circuit to an exactly zero Jacobi defect.
  {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(4, 4);
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          p(a, b) = unif(rng, -1.0, 1.0);
          p(b, a) = -p(a, b);
        }
      worst = std::max(worst, PoissonTensor::constant(p).jacobi_residual());
    }
    c.gated("constant_tensor_jacobi_exact", worst, 0.0, worst == 0.0);
  }
}

// The anchor intertwines the bracket with the field commutator. The hook
// scales the anchor wherever it appears; the commutator side is quadratic
// in that scale, so any value but +1 breaks the identity and must fail.
void anchor_check(Collector& c, std::mt19937& rng, const PoissonTensor& pi2,
                  double sharp_sign) {
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const OneForm a = algebra::random_closed_one_form(2, 3, rng, 0.3);
    const OneForm b = algebra::random_closed_one_form(2, 3, rng, 0.3);
    const VectorField lhs =
        spectral::sharp(pi2, algebra::koszul_bracket(pi2, a, b)) * sharp_sign;
    const VectorField rhs =
        spectral::commutator(spectral::sharp(pi2, a) * sharp_sign,
                             spectral::sharp(pi2, b) * sharp_sign);
    worst = std::max(worst, spectral::sup_bound(lhs - rhs));
  }
  c.below("anchor_is_bracket_morphism", worst, 1e-10);
}

void pairing_checks(Collector& c, std::mt19937& rng, const PoissonTensor& pi2,
                    const Scenario* s) {
  // <[df], [theta]> = 0: the pairing only sees classes.
  {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const OneForm ex = algebra::random_exact_one_form(2, 3, rng, 0.5);
      const OneForm cl = algebra::random_closed_one_form(2, 3, rng, 0.5);
      worst = std::max(worst, std::abs(algebra::pairing_mu(pi2, ex, cl)));
    }
    c.below("pairing_exact_against_closed_vanishes", worst, 1e-12);
  }

  const Eigen::MatrixXd omega4 = GroupoidModel::standard_torus(4).omega();
  Eigen::MatrixXd omega4s = Eigen::MatrixXd::Zero(4, 4);
  omega4s(0, 1) = 2.0;
  omega4s(1, 0) = -2.0;
  omega4s(2, 3) = 3.0;
  omega4s(3, 2) = -3.0;
  const PoissonTensor pi4 = GroupoidModel::symplectic_torus(omega4).pi();
  const PoissonTensor pi4s = GroupoidModel::symplectic_torus(omega4s).pi();

  // mu is antisymmetric on every shipped structure.
  {
    double worst = 0.0;
    for (const PoissonTensor* pi : {&pi2, &pi4, &pi4s}) {
      const Eigen::MatrixXd m = algebra::mu_matrix(*pi);
      worst = std::max(worst, (m + m.transpose()).cwiseAbs().maxCoeff());
    }
    c.below("mu_antisymmetric", worst, 1e-12);
  }
  // sigma is a constant multiple of mu; the multiple is -1 for unit
  // symplectic blocks and -(product of block scales) in general.
  const auto ratio_spread = [](const Eigen::MatrixXd& sg,
                               const Eigen::MatrixXd& m, double expected) {
    double worst = 0.0;
    bool any = false;
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = i + 1; j < m.cols(); ++j) {
        if (std::abs(m(i, j)) > 1e-12) {
          const double r = sg(i, j) / m(i, j);
          if (!any) lo = hi = r;
          any = true;
          lo = std::min(lo, r);
          hi = std::max(hi, r);
          worst = std::max(worst, std::abs(r - expected));
        } else {
          worst = std::max(worst, std::abs(sg(i, j)));
        }
      }
    return std::max(worst, any ? hi - lo : 0.0);
  };
  c.below("sigma_proportional_mu_standard",
          ratio_spread(algebra::sigma_matrix(omega4), algebra::mu_matrix(pi4),
                       -1.0),
          1e-10);
  c.below("sigma_proportional_mu_scaled",
          ratio_spread(algebra::sigma_matrix(omega4s),
                       algebra::mu_matrix(pi4s), -6.0),
          1e-10);
  // mu invertible on every symplectic structure in play.
  {
    std::vector<Eigen::MatrixXd> mats = {algebra::mu_matrix(pi2),
                                         algebra::mu_matrix(pi4),
                                         algebra::mu_matrix(pi4s)};
    if (s && s->has_symplectic)
      mats.push_back(
          algebra::mu_matrix(GroupoidModel::symplectic_torus(s->omega).pi()));
    double smin = 1e300;
    for (const auto& m : mats) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
      smin = std::min(smin, svd.singularValues().minCoeff());
    }
    c.at_least("mu_invertible_on_symplectic_structures", smin, 1e-12);
  }
  // The degenerate model is refused by the endpoint pipeline.
  {
    const GroupoidModel zero = GroupoidModel::zero_poisson(2);
    bool threw = false;
    try {
      (void)groupoid::flux_via_lambda(zero, Bisection::identity(zero));
    } catch (const std::exception&) {
      threw = true;
    }
    c.gated("zero_poisson_flux_rejected", threw ? 0.0 : 1.0, 0.5, threw);
  }
}

void flow_checks(Collector& c, std::mt19937& rng, const GroupoidModel& t2) {
  const PoissonTensor& pi2 = t2.pi();
  // A constant field advects to the exact translation.
  {
    VectorField x = {TrigPoly::constant(2, 0.3), TrigPoly::constant(2, -0.2)};
    const flows::FieldSampler sampler = [x](double) { return x; };
    const MapLift psi = flows::advect_map(sampler, 2, 0.0, 1.0, 16, 32);
    c.below("constant_field_advects_to_translation",
            flows::sup_distance(
                psi, MapLift::translation(std::vector<double>{0.3, -0.2})),
            1e-12);
  }
  // Per-coefficient amplitude over the 24 band-2 harmonics; 0.01 keeps the
  // velocity near 0.05 so the time-1 map stays sharply band-limited.
  const TrigPoly f = algebra::random_trigpoly(2, 2, rng, 0.001);
  const VectorField xf = spectral::sharp(pi2, spectral::d(f));
  const flows::FieldSampler sampler = [xf](double) { return xf; };
  const MapLift psi = flows::advect_map(sampler, 2, 0.0, 1.0, 128, 64);
  // Hamiltonian flows preserve omega ...
  c.below("hamiltonian_flow_symplectic",
          flows::symplecto_residual(t2.omega(), psi), 1e-8);
  // ... and Lebesgue measure.
  {
    const int n = 48;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const std::vector<double> x = {double(i) / n, double(j) / n};
        acc += psi.jacobian(x).determinant();
      }
    c.below("hamiltonian_flow_preserves_measure",
            std::abs(acc / (n * n) - 1.0), 1e-8);
  }
  // Flow segments compose: psi_{[a,1]} o psi_{[0,a]} = psi_{[0,1]}.
  {
    const MapLift first = flows::advect_map(sampler, 2, 0.0, 0.375, 48, 64);
    const MapLift second = flows::advect_map(sampler, 2, 0.375, 1.0, 80, 64);
    c.below("flow_two_step_composition",
            flows::sup_distance(flows::compose(second, first), psi), 1e-8);
  }
  // Fourth-order convergence of the integrator.
  {
    const TrigPoly fc =
        TrigPoly::harmonic_sin(2, std::vector<int>{1, 0}, 0.15) *
        TrigPoly::harmonic_sin(2, std::vector<int>{0, 1}, 1.0);
    const VectorField xc = spectral::sharp(pi2, spectral::d(fc));
    const flows::FieldSampler sc = [xc](double) { return xc; };
    const MapLift ref = flows::advect_map(sc, 2, 0.0, 1.0, 320, 64);
    const double e1 =
        flows::sup_distance(flows::advect_map(sc, 2, 0.0, 1.0, 20, 64), ref);
    const double e2 =
        flows::sup_distance(flows::advect_map(sc, 2, 0.0, 1.0, 40, 64), ref);
    c.at_least("flow_convergence_order",
               std::log2(std::max(e1, 1e-300) / std::max(e2, 1e-300)), 3.8);
  }
  // A non-symplectic lift is refused by the bisection gate.
  {
    std::vector<TrigPoly> u(2, TrigPoly(2));
    u[0] = TrigPoly::harmonic_sin(2, std::vector<int>{1, 0}, 0.5);
    const MapLift bad{std::move(u)};
    const double r = flows::symplecto_residual(t2.omega(), bad);
    bool threw = false;
    try {
      (void)Bisection::from_lift(t2, bad);
    } catch (const GateError&) {
      threw = true;
    }
    c.gated("nonsymplectic_lift_rejected", r, 0.1, r > 0.1 && threw);
  }
}

void groupoid_checks(Collector& c, std::mt19937& rng, const GroupoidModel& t2) {
  FluxOptions fo;
  fo.steps = 64;

  // Translation flux against the contraction of its velocity into omega.
  {
    const Eigen::Vector2d cc(0.3, -0.2);
    const flows::TranslationIsotopy iso(std::vector<double>{0.3, -0.2});
    const Eigen::VectorXd expected = -t2.omega() * cc;
    c.below("flux_translation_closed_form",
            eig_inf(groupoid::flux(t2, iso, fo).value.coeffs - expected),
            1e-12);
  }
  // The differencing pipeline reproduces the exact-velocity pipeline on a
  // generic (non-integrable) hamiltonian flow.
  {
    const TrigPoly f =
        TrigPoly::harmonic_sin(2, std::vector<int>{1, 0}, 1.0) *
        TrigPoly::harmonic_sin(2, std::vector<int>{0, 1}, 0.02);
    const flows::FlowIsotopy iso(spectral::sharp(t2.pi(), spectral::d(f)), 96,
                                 64);
    FluxOptions f96;
    f96.steps = 96;
    // The differenced velocity carries O(h^4) closedness noise at the node
    // spacing; structural failures sit orders of magnitude above this gate.
    f96.closed_tol = 1e-6;
    const Eigen::VectorXd exact = groupoid::flux(t2, iso, f96).value.coeffs;
    const flows::SampledIsotopy sampled = flows::sample_isotopy(iso, 96);
    const Eigen::VectorXd numeric =
        groupoid::flux(t2, sampled, f96).value.coeffs;
    c.below("sampled_flux_matches_exact_route", eig_inf(numeric - exact),
            1e-8);
  }
  // F(A * B) = F(A) + F(B) over mixed random pairs.
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto a = random_member(t2, i, rng);
      const auto b = random_member(t2, i + 1, rng);
      const auto based = flows::based_at(*b, a->lift_at(1.0));
      const auto ab = flows::star_concat(*a, *based);
      const Eigen::VectorXd sum = groupoid::flux(t2, *a, fo).value.coeffs +
                                  groupoid::flux(t2, *b, fo).value.coeffs;
      worst = std::max(
          worst, eig_inf(groupoid::flux(t2, *ab, fo).value.coeffs - sum));
    }
    c.below("flux_concatenation_additive", worst, 1e-7);
  }
  // epsilon(LK) = epsilon(L) + epsilon(K).
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Bisection l = Bisection::from_lift(t2, random_sympl_lift(i, rng));
      const Bisection k =
          Bisection::from_lift(t2, random_sympl_lift(i + 2, rng));
      const Bisection lk = groupoid::compose_bisections(t2, l, k);
      worst = std::max(worst, eig_inf(groupoid::epsilon(t2, lk) -
                                      groupoid::epsilon(t2, l) -
                                      groupoid::epsilon(t2, k)));
    }
    c.below("epsilon_bisection_homomorphism", worst, 1e-7);
  }
  // Pairing a bisection with a cocycle ignores the coboundary part.
  {
    const Bisection l = Bisection::from_lift(t2, random_sympl_lift(1, rng));
    Eigen::VectorXd lin(2);
    lin << 0.7, -0.3;
    const TrigPoly h =
        TrigPoly::harmonic_cos(2, std::vector<int>{1, 0}, 0.2) +
        TrigPoly::harmonic_sin(2, std::vector<int>{0, 1}, 0.1);
    const double with_h =
        groupoid::epsilon_pairing(t2, l, {lin, h});
    const double without =
        groupoid::epsilon_pairing(t2, l, {lin, TrigPoly(2)});
    const double direct = lin.dot(groupoid::epsilon(t2, l));
    c.below("cocycle_coboundary_invariance",
            std::max(std::abs(with_h - without), std::abs(without - direct)),
            1e-10);
  }
  // The exp path of a closed one-form grows linearly in its class.
  {
    double worst = 0.0;
    OneForm flat = spectral::constant_one_form(std::vector<double>{1.0, 0.0});
    OneForm wavy = flat;
    wavy[0] += spectral::tp_diff(
        TrigPoly::harmonic_sin(2, std::vector<int>{1, 0}, 0.1), 0);
    for (const OneForm* theta : {&flat, &wavy}) {
      const auto path = groupoid::exp_bisection_path(*theta, t2, 64);
      const Eigen::VectorXd cls = algebra::cohomology_class(*theta).coeffs;
      for (int j = 1; j <= 8; ++j) {
        const double T = j / 8.0;
        worst = std::max(
            worst, eig_inf(groupoid::flux_prefix(t2, *path, T, fo).value.coeffs -
                           T * cls));
      }
    }
    c.below("exp_path_prefix_linearity", worst, 1e-7);
  }
  // Hamiltonian family: every prefix flux vanishes and the endpoint has
  // trivial holonomy.
  {
    const TrigPoly f =
        TrigPoly::harmonic_sin(2, std::vector<int>{1, 1}, 0.2);
    const flows::FlowIsotopy iso(spectral::sharp(t2.pi(), spectral::d(f)), 64,
                                 64);
    const groupoid::ExactnessReport v =
        groupoid::exactness_verdict(t2, iso, 1e-8, 10, fo);
    double worstp = 0.0;
    for (double p : v.prefix_norms) worstp = std::max(worstp, p);
    c.gated("hamiltonian_prefix_fluxes_vanish", worstp, 1e-8,
            worstp < 1e-8 && v.hamiltonian_path);
    double worsth = 0.0;
    for (double h : v.endpoint_holonomy)
      worsth = std::max(worsth, groupoid::circle_dist(h, 0.0));
    c.below("hamiltonian_endpoint_holonomy_trivial", worsth, 1e-6);
  }
  // rho(F) equals the endpoint holonomy on translation and shear families.
  {
    double worst = 0.0;
    std::vector<std::unique_ptr<flows::Isotopy>> isos;
    isos.push_back(std::make_unique<flows::TranslationIsotopy>(
        std::vector<double>{0.3, -0.2}));
    isos.push_back(std::make_unique<flows::ShearIsotopy>(
        0, TrigPoly::harmonic_sin(2, std::vector<int>{0, 1}, 0.1) +
               TrigPoly::constant(2, 0.05)));
    for (const auto& iso : isos) {
      const CohomologyClass F = groupoid::flux(t2, *iso, fo).value;
      const Bisection endpoint =
          Bisection::from_lift(t2, iso->lift_at(1.0), 1e-6);
      for (const std::vector<int>& w :
           {std::vector<int>{1, 0}, std::vector<int>{0, 1}}) {
        const double r = groupoid::rho(F, w);
        const double p = groupoid::holonomy_phi(t2, endpoint, w, {}, 1024);
        worst = std::max(worst, groupoid::circle_dist(r, p));
      }
    }
    c.below("rho_of_flux_matches_holonomy", worst, 1e-6);
  }
  // Phi_{KL}(gamma) = Phi_L(gamma) + Phi_K(psi_L o gamma).
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Bisection l = Bisection::from_lift(t2, random_sympl_lift(i, rng));
      const Bisection k =
          Bisection::from_lift(t2, random_sympl_lift(i + 1, rng));
      const Bisection kl = groupoid::compose_bisections(t2, k, l);
      const std::vector<int> w =
          (i % 2) ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
      const double lhs = groupoid::holonomy_phi(t2, kl, w, {}, 1024);
      const double rhs =
          groupoid::holonomy_phi(t2, l, w, {}, 1024) +
          groupoid::holonomy_phi_loop(
              t2, k, groupoid::transported_loop(l.lift(), w), 1024);
      worst = std::max(worst, groupoid::circle_dist(lhs, rhs));
    }
    c.below("holonomy_cocycle_identity", worst, 1e-7);
  }
  // The identity bisection carries no holonomy.
  {
    const Bisection id = Bisection::identity(t2);
    double worst = 0.0;
    for (const std::vector<int>& w :
         {std::vector<int>{1, 0}, std::vector<int>{0, 1}})
      worst = std::max(
          worst, std::abs(groupoid::holonomy_phi(t2, id, w, {}, 512)));
    c.below("holonomy_identity_bisection_trivial", worst, 1e-12);
  }
  // Holonomy is invariant under loop homotopy.
  {
    const Bisection l = Bisection::from_lift(
        t2, flows::ShearIsotopy(
                0, TrigPoly::harmonic_sin(2, std::vector<int>{0, 1}, 0.1) +
                       TrigPoly::constant(2, 0.05))
                .lift_at(1.0));
    const std::vector<int> w = {1, 0};
    const std::vector<double> base = {0.0, 0.3};
    const double straight = groupoid::holonomy_phi(t2, l, w, base, 1024);
    const groupoid::LoopSampler wobble = [&](double s) {
      const double tau = 2.0 * M_PI * s;
      groupoid::LoopPoint p;
      p.x = {base[0] + s, base[1] + 0.07 * std::sin(tau)};
      p.dx = {1.0, 0.07 * 2.0 * M_PI * std::cos(tau)};
      return p;
    };
    c.below("holonomy_homotopy_invariant",
            groupoid::circle_dist(
                straight, groupoid::holonomy_phi_loop(t2, l, wobble, 1024)),
            1e-9);
  }
  // The unit lattice loop has flux equal to a generator of the integral
  // lattice, and its endpoint is isotropic with nonzero lambda.
  {
    const flows::TranslationIsotopy loop(std::vector<double>{1.0, 0.0});
    const Eigen::VectorXd F = groupoid::flux(t2, loop, fo).value.coeffs;
    const Eigen::VectorXd expected =
        -t2.omega() * Eigen::Vector2d(1.0, 0.0);
    const double dev = eig_inf(F - expected);
    c.gated("lattice_loop_flux_is_generator", dev, 1e-7,
            dev < 1e-7 && is_generator(F, 1e-7));

    const Bisection end = Bisection::from_lift(
        t2, MapLift::translation(std::vector<double>{1.0, 0.0}));
    const Eigen::VectorXd lam = groupoid::lambda_map(t2, end);
    Eigen::VectorXd e1v(2);
    e1v << 1.0, 0.0;
    const Bisection id = Bisection::identity(t2);
    // Deck translations act trivially downstairs: the endpoint is the
    // identity on the torus even though its lambda sees the loop.
    double wrap = 0.0;
    for (int probe = 0; probe < 8; ++probe) {
      const std::vector<double> x = {unif(rng, 0.0, 1.0), unif(rng, 0.0, 1.0)};
      const std::vector<double> y = end.lift().apply(x);
      for (int i = 0; i < 2; ++i)
        wrap = std::max(wrap, groupoid::circle_dist(y[static_cast<std::size_t>(i)],
                                                    x[static_cast<std::size_t>(i)]));
    }
    const double dev2 =
        std::max({eig_inf(lam - e1v),
                  eig_inf(groupoid::lambda_map(t2, id)), wrap});
    c.gated("lattice_loop_endpoint_lambda", dev2, 1e-10,
            dev2 < 1e-10 && eig_inf(lam) > 0.5);
  }
  // Flux via the endpoint agrees with the time integral on every kind.
  {
    double worst = 0.0;
    std::vector<std::unique_ptr<flows::Isotopy>> isos;
    isos.push_back(std::make_unique<flows::TranslationIsotopy>(
        std::vector<double>{0.3, -0.2}));
    isos.push_back(std::make_unique<flows::ShearIsotopy>(
        0, TrigPoly::harmonic_sin(2, std::vector<int>{0, 1}, 0.1) +
               TrigPoly::constant(2, 0.05)));
    isos.push_back(std::make_unique<flows::FlowIsotopy>(
        spectral::sharp(t2.pi(),
                        spectral::d(TrigPoly::harmonic_sin(
                            2, std::vector<int>{1, 1}, 0.2))),
        128, 64));
    OneForm flat = spectral::constant_one_form(std::vector<double>{0.4, 0.1});
    isos.push_back(groupoid::exp_bisection_path(flat, t2, 64));
    for (const auto& iso : isos) {
      const Eigen::VectorXd time_integral =
          groupoid::flux(t2, *iso, fo).value.coeffs;
      const Bisection end = Bisection::from_lift(t2, iso->lift_at(1.0), 1e-6);
      const Eigen::VectorXd endpoint =
          groupoid::flux_via_lambda(t2, end).coeffs;
      worst = std::max(worst, eig_inf(time_integral - endpoint));
    }
    c.below("flux_endpoint_consistency_all_kinds", worst, 1e-6);
  }
}

}  // namespace

Suite verify_suite(const Scenario* s, const SuiteHooks& hooks) {
  std::mt19937 rng(12345);
  Collector c;
  const GroupoidModel t2 = GroupoidModel::standard_torus(2);
  const PoissonTensor& pi2 = t2.pi();

  spectral_checks(c, rng);
  algebra_checks(c, rng, pi2);
  anchor_check(c, rng, pi2, hooks.sharp_sign);
  pairing_checks(c, rng, pi2, s);
  flow_checks(c, rng, t2);
  groupoid_checks(c, rng, t2);

  Suite suite;
  suite.checks = std::move(c.checks);
  for (const SuiteCheck& ck : suite.checks)
    (ck.pass ? suite.passed : suite.failed) += 1;
  return suite;
}

}  // namespace torusflux::cli
