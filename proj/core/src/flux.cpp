// SPDX-License-Identifier: Apache-2.0
#include "torusflux/groupoid/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "torusflux/groupoid/holonomy.hpp"
#include "torusflux/spectral/grid.hpp"
#include "torusflux/spectral/poisson.hpp"

namespace torusflux::groupoid {

using algebra::CohomologyClass;
using flows::Isotopy;
using flows::MapLift;
using spectral::OneForm;
using spectral::TrigPoly;
using spectral::VectorField;

namespace {

constexpr double kSideNudge = 1e-12;

struct ThetaSample {
  OneForm theta;
  double closedness = 0.0;
  double aliasing = 0.0;
};

int content_band(const std::vector<TrigPoly>& v) {
  int b = 0;
  for (const auto& c : v) b = std::max(b, c.max_band());
  return b;
}

// (Z contracted into omega)_j = sum_i Z^i Omega_ij.
OneForm contract_velocity(const GroupoidModel& model, const VectorField& z) {
  const int n = model.dim();
  const Eigen::MatrixXd& w = model.omega();
  OneForm theta;
  theta.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    TrigPoly comp = TrigPoly::constant(n, 0.0);
    for (int i = 0; i < n; ++i)
      if (w(i, j) != 0.0) comp += z[static_cast<std::size_t>(i)] * w(i, j);
    theta.push_back(std::move(comp));
  }
  return theta;
}

// Five/three/two-point uniform-grid derivative weights at position d,
// scaled by 1/h outside.
std::vector<double> fd_weights(int npts, int d) {
  switch (npts) {
    case 5:
      switch (d) {
        case 0: return {-25 / 12., 48 / 12., -36 / 12., 16 / 12., -3 / 12.};
        case 1: return {-3 / 12., -10 / 12., 18 / 12., -6 / 12., 1 / 12.};
        case 2: return {1 / 12., -8 / 12., 0., 8 / 12., -1 / 12.};
        case 3: return {-1 / 12., 6 / 12., -18 / 12., 10 / 12., 3 / 12.};
        default: return {3 / 12., -16 / 12., 36 / 12., -48 / 12., 25 / 12.};
      }
    case 3:
      switch (d) {
        case 0: return {-3 / 2., 4 / 2., -1 / 2.};
        case 1: return {-1 / 2., 0., 1 / 2.};
        default: return {1 / 2., -4 / 2., 3 / 2.};
      }
    default:
      return {-1., 1.};
  }
}

// Time-difference psi on its node grid, invert, and pull the velocity to
// the base points: Z(y) = (d/dt u_t)(psi_t^{-1}(y)), then contract.
ThetaSample theta_by_differencing(const GroupoidModel& model,
                                  const Isotopy& iso, double t,
                                  double closed_tol) {
  const int n = model.dim();
  int nodes = kDefaultTimeSteps + 1;
  if (const auto* s = dynamic_cast<const flows::SampledIsotopy*>(&iso))
    nodes = s->nslices();
  const double h = 1.0 / (nodes - 1);
  const int j = static_cast<int>(std::lround(t * (nodes - 1)));

  const int npts = nodes >= 5 ? 5 : (nodes >= 3 ? 3 : 2);
  const int start = std::clamp(j - npts / 2, 0, nodes - npts);
  const std::vector<double> w = fd_weights(npts, j - start);

  double alias_in = 0.0;
  std::vector<TrigPoly> v(static_cast<std::size_t>(n),
                          TrigPoly::constant(n, 0.0));
  for (int k = 0; k < npts; ++k) {
    const MapLift lift = iso.lift_at((start + k) * h);
    alias_in = std::max(alias_in, lift.aliasing_residual());
    for (int a = 0; a < n; ++a)
      v[static_cast<std::size_t>(a)] +=
          lift.disp()[static_cast<std::size_t>(a)] * (w[static_cast<std::size_t>(k)] / h);
  }

  const MapLift psi = iso.lift_at(t);
  const MapLift inv = flows::inverse(psi);

  // Sample Z = v o psi^{-1} on a lattice and project back to coefficients.
  int band = std::clamp(content_band(v) + inv.max_band() + 4, 4, kBandwidthCap);
  if (n >= 4) band = std::min(band, 11);
  else if (n == 3) band = std::min(band, 30);
  const int grid = std::max(n <= 2 ? 32 : 16, 4 * band + 4);
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(grid);

  std::vector<std::vector<double>> zs(
      static_cast<std::size_t>(n), std::vector<double>(total));
  std::vector<double> y(static_cast<std::size_t>(n));
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rem = p;
    for (int a = n - 1; a >= 0; --a) {
      y[static_cast<std::size_t>(a)] =
          static_cast<double>(rem % static_cast<std::size_t>(grid)) / grid;
      rem /= static_cast<std::size_t>(grid);
    }
    const std::vector<double> x = inv.apply(y);
    for (int a = 0; a < n; ++a)
      zs[static_cast<std::size_t>(a)][p] = v[static_cast<std::size_t>(a)].eval(x);
  }

  const Eigen::MatrixXd& om = model.omega();
  ThetaSample out;
  out.aliasing = alias_in + psi.aliasing_residual() + inv.aliasing_residual();
  out.theta.reserve(static_cast<std::size_t>(n));
  std::vector<double> comp(total);
  for (int jj = 0; jj < n; ++jj) {
    for (std::size_t p = 0; p < total; ++p) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        if (om(i, jj) != 0.0) acc += zs[static_cast<std::size_t>(i)][p] * om(i, jj);
      comp[p] = acc;
    }
    spectral::CoeffResult r = spectral::to_coeffs(comp, n, grid, band);
    out.aliasing += r.aliasing_l2;
    out.theta.push_back(spectral::tp_chop(r.poly, 1e-15, &out.aliasing));
  }
  out.closedness = algebra::closedness_residual(out.theta);
  if (!(out.closedness < closed_tol))
    throw NotClosedError("theta_t failed the closedness assertion", out.closedness);
  return out;
}

ThetaSample theta_sample(const GroupoidModel& model, const Isotopy& iso,
                         double t, double closed_tol) {
  if (model.kind() != ModelKind::SymplecticTorus)
    throw DimError("theta_t needs the symplectic torus model");
  if (iso.dim() != model.dim())
    throw DimError("isotopy dimension does not match the model");
  if (std::optional<VectorField> z = iso.eulerian(t)) {
    ThetaSample out;
    out.theta = contract_velocity(model, *z);
    out.closedness = algebra::closedness_residual(out.theta);
    if (!(out.closedness < closed_tol))
      throw NotClosedError("theta_t failed the closedness assertion",
                           out.closedness);
    return out;
  }
  return theta_by_differencing(model, iso, t, closed_tol);
}

// Interior velocity breakpoints restricted to (lo, hi), deduplicated.
std::vector<double> panel_edges(const Isotopy& iso, double lo, double hi) {
  std::vector<double> bps = iso.breakpoints();
  std::sort(bps.begin(), bps.end());
  std::vector<double> edges{lo};
  for (double b : bps)
    if (b > lo + 1e-12 && b < hi - 1e-12 && b - edges.back() > 1e-12)
      edges.push_back(b);
  edges.push_back(hi);
  return edges;
}

FluxResult integrate_flux(const GroupoidModel& model, const Isotopy& iso,
                          double hi, const FluxOptions& opts) {
  if (opts.steps < 4 || opts.steps % 4 != 0)
    throw GridError("flux quadrature steps must be a positive multiple of 4");
  const MapLift start = iso.lift_at(0.0);
  const double id_gap =
      flows::sup_distance(start, MapLift::identity(iso.dim()));
  if (!(id_gap < 1e-8))
    throw GateError("flux needs a family starting at the identity", id_gap);

  const int n = model.dim();
  FluxResult res;
  res.value.coeffs = Eigen::VectorXd::Zero(n);
  if (hi <= 1e-14) return res;

  const std::vector<double> edges = panel_edges(iso, 0.0, hi);
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double a = edges[e], b = edges[e + 1];
    const double width = b - a;
    int s = static_cast<int>(std::lround(opts.steps * width / 4.0)) * 4;
    s = std::max(s, 4);
    const double h = width / s;

    std::vector<Eigen::VectorXd> cls(static_cast<std::size_t>(s) + 1);
    for (int k = 0; k <= s; ++k) {
      double t = a + k * h;
      if (k == 0 && a > 1e-12) t += kSideNudge;        // right limit
      if (k == s && b < 1.0 - 1e-12) t -= kSideNudge;  // left limit
      ThetaSample ts = theta_sample(model, iso, t, opts.closed_tol);
      res.max_closedness = std::max(res.max_closedness, ts.closedness);
      res.max_aliasing = std::max(res.max_aliasing, ts.aliasing);
      cls[static_cast<std::size_t>(k)] =
          algebra::cohomology_class(ts.theta,
                                    std::numeric_limits<double>::infinity())
              .coeffs;
    }

    auto simpson = [&](int stride) {
      Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
      const int m = s / stride;
      for (int k = 0; k <= m; ++k) {
        const double w = (k == 0 || k == m) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        acc += w * cls[static_cast<std::size_t>(k * stride)];
      }
      return (acc * (stride * h / 3.0)).eval();
    };
    const Eigen::VectorXd full = simpson(1);
    const Eigen::VectorXd half = simpson(2);
    res.quad_check =
        std::max(res.quad_check, (full - half).lpNorm<Eigen::Infinity>());
    res.value.coeffs += full;
  }
  if (!(res.quad_check < opts.quad_tol))
    throw NumericalError(
        "flux quadrature did not converge: step-halving disagreement " +
        std::to_string(res.quad_check));
  return res;
}

}  // namespace

OneForm theta_t(const GroupoidModel& model, const Isotopy& iso, double t,
                double closed_tol, double* aliasing) {
  if (t < -1e-12 || t > 1.0 + 1e-12)
    throw TimeError("isotopy time must lie in [0, 1], got " + std::to_string(t));
  ThetaSample s = theta_sample(model, iso, std::clamp(t, 0.0, 1.0), closed_tol);
  if (aliasing) *aliasing = s.aliasing;
  return std::move(s.theta);
}

FluxResult flux(const GroupoidModel& model, const Isotopy& iso,
                const FluxOptions& opts) {
  return integrate_flux(model, iso, 1.0, opts);
}

FluxResult flux_prefix(const GroupoidModel& model, const Isotopy& iso,
                       double t, const FluxOptions& opts) {
  if (t < -1e-12 || t > 1.0 + 1e-12)
    throw TimeError("prefix time must lie in [0, 1], got " + std::to_string(t));
  FluxOptions scaled = opts;
  scaled.steps = std::max(
      4, static_cast<int>(std::lround(opts.steps * std::clamp(t, 0.0, 1.0) / 4.0)) * 4);
  return integrate_flux(model, iso, std::clamp(t, 0.0, 1.0), scaled);
}

std::unique_ptr<Isotopy> exp_bisection_path(const OneForm& theta,
                                            const GroupoidModel& model,
                                            int steps) {
  if (model.kind() != ModelKind::SymplecticTorus)
    throw DimError("exp paths need the symplectic torus model");
  if (static_cast<int>(theta.size()) != model.dim())
    throw DimError("one-form dimension does not match the model");
  for (const auto& c : theta)
    if (c.dim() != model.dim())
      throw DimError("one-form component dimension mismatch");
  const double r = algebra::closedness_residual(theta);
  if (!(r < kClosedTol))
    throw NotClosedError("exp path needs a closed one-form", r);
  VectorField x = spectral::sharp(model.pi(), theta);
  if (content_band(x) == 0) {
    std::vector<double> c;
    c.reserve(x.size());
    for (const auto& comp : x) c.push_back(comp.mean());
    return std::make_unique<flows::TranslationIsotopy>(std::move(c));
  }
  return std::make_unique<flows::FlowIsotopy>(std::move(x), steps);
}

ExactnessReport exactness_verdict(const GroupoidModel& model,
                                  const Isotopy& iso, double tol, int grid,
                                  const FluxOptions& opts) {
  if (grid < 1) throw GridError("prefix grid must have at least one point");
  ExactnessReport rep;
  rep.tol = tol;
  rep.hamiltonian_path = true;
  for (int j = 1; j <= grid; ++j) {
    const double t = static_cast<double>(j) / grid;
    FluxResult f = flux_prefix(model, iso, t, opts);
    const double norm = f.value.coeffs.size() == 0
                            ? 0.0
                            : f.value.coeffs.lpNorm<Eigen::Infinity>();
    rep.times.push_back(t);
    rep.prefix_fluxes.push_back(std::move(f.value));
    rep.prefix_norms.push_back(norm);
    if (!(norm < tol)) rep.hamiltonian_path = false;
  }
  const Bisection endpoint =
      Bisection::from_lift(model, iso.lift_at(1.0), 1e-6);
  std::vector<int> w(static_cast<std::size_t>(model.dim()), 0);
  for (int i = 0; i < model.dim(); ++i) {
    w[static_cast<std::size_t>(i)] = 1;
    rep.endpoint_holonomy.push_back(holonomy_phi(model, endpoint, w));
    w[static_cast<std::size_t>(i)] = 0;
  }
  return rep;
}

}  // namespace torusflux::groupoid
