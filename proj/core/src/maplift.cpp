// SPDX-License-Identifier: Apache-2.0
#include "torusflux/flows/maplift.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <array>
#include <cmath>
#include <limits>

#include "torusflux/spectral/grid.hpp"

namespace torusflux::flows {

using spectral::CoeffResult;
using spectral::to_coeffs;
using spectral::to_grid;

MapLift::MapLift(std::vector<TrigPoly> u, double aliasing_residual)
    : dim_(u.empty() ? 0 : u.front().dim()),
      u_(std::move(u)),
      aliasing_(aliasing_residual) {
  if (u_.empty()) throw DimError("empty displacement tuple");
  if (static_cast<int>(u_.size()) != dim_)
    throw DimError("displacement count does not match dimension");
  for (const auto& c : u_)
    if (c.dim() != dim_) throw DimError("mixed dimensions in displacement");
}

MapLift MapLift::identity(int dim) {
  return MapLift(std::vector<TrigPoly>(static_cast<std::size_t>(dim),
                                       TrigPoly(dim)));
}

MapLift MapLift::translation(std::span<const double> c) {
  const int dim = static_cast<int>(c.size());
  std::vector<TrigPoly> u;
  u.reserve(c.size());
  for (double v : c) u.push_back(TrigPoly::constant(dim, v));
  return MapLift(std::move(u));
}

int MapLift::max_band() const {
  int b = 0;
  for (const auto& c : u_) b = std::max(b, c.max_band());
  return b;
}

bool MapLift::is_identity() const {
  for (const auto& c : u_)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<double> MapLift::apply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw DimError("point dimension mismatch");
  std::vector<double> y(x.begin(), x.end());
  for (int i = 0; i < dim_; ++i) y[static_cast<std::size_t>(i)] += u_[static_cast<std::size_t>(i)].eval(x);
  return y;
}

Eigen::MatrixXd MapLift::jacobian(std::span<const double> x) const {
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int a = 0; a < dim_; ++a)
      j(i, a) += spectral::tp_diff(u_[static_cast<std::size_t>(i)], a).eval(x);
  return j;
}

std::vector<double> MapLift::mean_disp() const { return spectral::zero_modes(u_); }

namespace {

// Row-major lattice points j / N, axis 0 slowest — the layout of to_grid.
std::vector<double> lattice_points(int dim, int n) {
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(n);
  std::vector<double> pts(total * static_cast<std::size_t>(dim));
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rem = p;
    for (int a = dim - 1; a >= 0; --a) {
      pts[p * dim + static_cast<std::size_t>(a)] =
          static_cast<double>(rem % static_cast<std::size_t>(n)) / n;
      rem /= static_cast<std::size_t>(n);
    }
  }
  return pts;
}

int auto_band(int hint) {
  return std::min(kBandwidthCap, std::max(hint, 4) + 12);
}

// Largest band the per-dimension grid cap can alias-check (N >= 2B + 2).
int band_limit(int dim) {
  const int cap = dim <= 2 ? 512 : (dim == 3 ? 128 : 48);
  return std::min(kBandwidthCap, (cap - 2) / 2);
}

int grid_for_band(int band, int dim) {
  // N >= 2B + 2 is required; 4B gives headroom so the projection loss is
  // actually measured rather than folded in. Keep the total point count sane
  // in higher dimension.
  const int want = std::max(32, 4 * band + 4);
  const int cap = dim <= 2 ? 512 : (dim == 3 ? 128 : 48);
  return std::min(want, cap);
}

MapLift project_samples(std::vector<std::vector<double>> samples, int dim,
                        int n, int band, double inherited,
                        double aliasing_bound, const char* what) {
  std::vector<TrigPoly> comps;
  comps.reserve(samples.size());
  double aliasing = inherited;
  for (auto& s : samples) {
    CoeffResult r = to_coeffs(s, dim, n, band);
    aliasing += r.aliasing_l2;
    comps.push_back(spectral::tp_chop(r.poly, 1e-15, &aliasing));
  }
  if (aliasing > aliasing_bound)
    throw BandwidthError(std::string("aliasing bound exceeded in ") + what +
                         ": " + std::to_string(aliasing) + " > " +
                         std::to_string(aliasing_bound));
  return MapLift(std::move(comps), aliasing);
}

}  // namespace

MapLift compose(const MapLift& outer, const MapLift& inner, int band,
                double aliasing_bound) {
  if (outer.dim() != inner.dim())
    throw DimError("composition dimension mismatch");
  const int dim = outer.dim();
  if (outer.is_identity())
    return MapLift(inner.disp(),
                   inner.aliasing_residual() + outer.aliasing_residual());
  // The composite's spectrum widens with the modulation depth 2*pi*k*|u_in|,
  // not with the sum of the input bands, so a band chosen from the bands
  // alone can undershoot badly. With band == 0 we widen until the measured
  // projection loss clears the bound or the representable limit is reached;
  // an explicit band is honoured as given.
  const bool fixed_band = band != 0;
  if (!fixed_band) band = auto_band(outer.max_band() + inner.max_band());
  const int limit = band_limit(dim);
  const double inherited =
      outer.aliasing_residual() + inner.aliasing_residual();
  for (;;) {
    const int n = grid_for_band(band, dim);

    // u(x) = u_in(x) + u_out(x + u_in(x)): the first term is exact; only the
    // outer term needs scattered evaluation and re-projection.
    const std::vector<double> pts = lattice_points(dim, n);
    const std::size_t total = pts.size() / static_cast<std::size_t>(dim);
    std::vector<std::vector<double>> samples(
        static_cast<std::size_t>(dim), std::vector<double>(total));
    std::vector<double> y(static_cast<std::size_t>(dim));
    for (std::size_t p = 0; p < total; ++p) {
      const std::span<const double> x(pts.data() + p * dim,
                                      static_cast<std::size_t>(dim));
      for (int a = 0; a < dim; ++a)
        y[static_cast<std::size_t>(a)] =
            x[static_cast<std::size_t>(a)] +
            inner.disp()[static_cast<std::size_t>(a)].eval(x);
      for (int a = 0; a < dim; ++a)
        samples[static_cast<std::size_t>(a)][p] =
            outer.disp()[static_cast<std::size_t>(a)].eval(y);
    }
    MapLift outer_moved = project_samples(
        std::move(samples), dim, n, band, inherited,
        std::numeric_limits<double>::infinity(), "map composition");
    if (const char* dbg = std::getenv("TORUSFLUX_DEBUG_COMPOSE"); dbg)
      std::fprintf(stderr, "[compose] band=%d n=%d inherited=%.3e residual=%.6f\n",
                   band, n, inherited, outer_moved.aliasing_residual());
    if (outer_moved.aliasing_residual() <= aliasing_bound) {
      std::vector<TrigPoly> u = outer_moved.disp();
      for (int a = 0; a < dim; ++a)
        u[static_cast<std::size_t>(a)] +=
            inner.disp()[static_cast<std::size_t>(a)];
      return MapLift(std::move(u), outer_moved.aliasing_residual());
    }
    if (fixed_band || band >= limit)
      throw BandwidthError(
          "aliasing bound exceeded in map composition: " +
          std::to_string(outer_moved.aliasing_residual()) + " > " +
          std::to_string(aliasing_bound));
    band = std::min(limit, 2 * band);
  }
}

MapLift inverse(const MapLift& psi, double tol, int band) {
  const int dim = psi.dim();
  if (psi.is_identity()) return psi;
  if (band == 0) band = auto_band(psi.max_band());
  const int n = grid_for_band(band, dim);

  // Solve v + u(y + v) = 0 per lattice point by damped Newton steps; plain
  // fixed-point iteration contracts only while sup|Du| < 1, which genuine
  // flow maps exceed well before they stop being diffeomorphisms.
  std::vector<std::vector<TrigPoly>> du(
      static_cast<std::size_t>(dim),
      std::vector<TrigPoly>(static_cast<std::size_t>(dim), TrigPoly(dim)));
  for (int i = 0; i < dim; ++i)
    for (int a = 0; a < dim; ++a)
      du[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] =
          spectral::tp_diff(psi.disp()[static_cast<std::size_t>(i)], a);

  const std::vector<double> pts = lattice_points(dim, n);
  const std::size_t total = pts.size() / static_cast<std::size_t>(dim);
  std::vector<std::vector<double>> v(static_cast<std::size_t>(dim),
                                     std::vector<double>(total, 0.0));
  Eigen::VectorXd vp(dim), res(dim), trial(dim), res_trial(dim);
  Eigen::MatrixXd jac(dim, dim);
  std::vector<double> z(static_cast<std::size_t>(dim));
  const auto residual_at = [&](const Eigen::VectorXd& w,
                               const std::span<const double> y,
                               Eigen::VectorXd& out) {
    for (int a = 0; a < dim; ++a)
      z[static_cast<std::size_t>(a)] = y[static_cast<std::size_t>(a)] + w(a);
    for (int a = 0; a < dim; ++a)
      out(a) = w(a) + psi.disp()[static_cast<std::size_t>(a)].eval(z);
  };
  for (std::size_t p = 0; p < total; ++p) {
    const std::span<const double> y(pts.data() + p * dim,
                                    static_cast<std::size_t>(dim));
    vp.setZero();
    residual_at(vp, y, res);
    bool converged = false;
    for (int it = 0; it < 60; ++it) {
      if (res.cwiseAbs().maxCoeff() < tol) {
        converged = true;
        break;
      }
      for (int a = 0; a < dim; ++a)
        z[static_cast<std::size_t>(a)] =
            y[static_cast<std::size_t>(a)] + vp(a);
      for (int i = 0; i < dim; ++i)
        for (int a = 0; a < dim; ++a)
          jac(i, a) = (i == a ? 1.0 : 0.0) +
                      du[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]
                          .eval(z);
      const Eigen::VectorXd step = jac.partialPivLu().solve(-res);
      double scale = 1.0;
      bool improved = false;
      for (int halve = 0; halve < 30; ++halve) {
        trial = vp + scale * step;
        residual_at(trial, y, res_trial);
        if (res_trial.cwiseAbs().maxCoeff() <
            res.cwiseAbs().maxCoeff()) {
          improved = true;
          break;
        }
        scale *= 0.5;
      }
      if (!improved) break;
      vp = trial;
      res = res_trial;
    }
    if (!converged)
      throw NumericalError(
          "fixed-point inversion did not converge (displacement too steep)");
    for (int a = 0; a < dim; ++a) v[static_cast<std::size_t>(a)][p] = vp(a);
  }
  return project_samples(std::move(v), dim, n, band, psi.aliasing_residual(),
                         // Inversion is an internal reconstruction; the
                         // caller sees the residual, no gate here.
                         std::numeric_limits<double>::infinity(), "inverse");
}

double symplecto_residual(const Eigen::MatrixXd& omega, const MapLift& psi,
                          int grid) {
  const int dim = psi.dim();
  if (omega.rows() != dim || omega.cols() != dim)
    throw DimError("symplectic matrix dimension mismatch");
  if (dim % 2 != 0) throw DimError("even dimension required");

  // E = Du^T Omega + Omega Du + Du^T Omega Du, a matrix of trig polys;
  // its sup over an alias-free grid is the reported residual.
  std::vector<std::vector<TrigPoly>> du(
      static_cast<std::size_t>(dim),
      std::vector<TrigPoly>(static_cast<std::size_t>(dim), TrigPoly(dim)));
  for (int i = 0; i < dim; ++i)
    for (int a = 0; a < dim; ++a)
      du[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] =
          spectral::tp_diff(psi.disp()[static_cast<std::size_t>(i)], a);

  const auto mul_wide = [](const TrigPoly& a, const TrigPoly& b) {
    return spectral::mul(a, b, spectral::kMaxFreqComponent);
  };

  double worst = 0.0;
  int band_e = 0;
  std::vector<std::vector<TrigPoly>> e(
      static_cast<std::size_t>(dim),
      std::vector<TrigPoly>(static_cast<std::size_t>(dim), TrigPoly(dim)));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      TrigPoly s(dim);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          if (omega(i, j) == 0.0) continue;
          // Quadratic part (Du^T Omega Du)_{ab}.
          s += mul_wide(du[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)],
                        du[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)]) *
               omega(i, j);
        }
      // Linear terms: (Du^T Omega)_{ab} = sum_i Du_{ia} Omega_{ib},
      //               (Omega Du)_{ab}  = sum_j Omega_{aj} Du_{jb}.
      for (int i = 0; i < dim; ++i)
        if (omega(i, b) != 0.0)
          s += du[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] *
               omega(i, b);
      for (int j = 0; j < dim; ++j)
        if (omega(a, j) != 0.0)
          s += du[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)] *
               omega(a, j);
      e[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = s;
      band_e = std::max(band_e, s.max_band());
    }
  if (grid == 0)
    grid = std::clamp(2 * band_e + 2, 16, psi.dim() <= 2 ? 256 : 32);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const TrigPoly& s = e[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (s.is_zero()) continue;
      for (double v : to_grid(s, grid)) worst = std::max(worst, std::abs(v));
    }
  return worst;
}

double sup_distance(const MapLift& a, const MapLift& b) {
  if (a.dim() != b.dim()) throw DimError("lift dimension mismatch");
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    m = std::max(m, (a.disp()[static_cast<std::size_t>(i)] -
                     b.disp()[static_cast<std::size_t>(i)])
                        .l1());
  return m;
}

}  // namespace torusflux::flows
