// SPDX-License-Identifier: Apache-2.0
#include "torusflux/groupoid/holonomy.hpp"

#include <cmath>

namespace torusflux::groupoid {

double circle_wrap(double a) {
  double x = a - std::round(a);
  if (x >= 0.5) x -= 1.0;
  if (x < -0.5) x += 1.0;
  return x;
}

double circle_dist(double a, double b) { return std::abs(circle_wrap(a - b)); }

double rho(const algebra::CohomologyClass& c, const std::vector<int>& winding) {
  if (static_cast<int>(winding.size()) != c.dim())
    throw DimError("winding vector dimension does not match the class");
  double acc = 0.0;
  for (int i = 0; i < c.dim(); ++i)
    acc += c.coeffs(i) * winding[static_cast<std::size_t>(i)];
  return circle_wrap(acc);
}

double holonomy_phi_loop(const GroupoidModel& model, const Bisection& l,
                         const LoopSampler& loop, int quad) {
  if (model.kind() != ModelKind::SymplecticTorus)
    throw DimError("holonomy needs the symplectic torus model");
  if (quad < 8) throw GridError("holonomy quadrature needs at least 8 nodes");
  const int n = model.dim();
  const Eigen::MatrixXd& om = model.omega();
  const flows::MapLift& psi = l.lift();

  // Integrand of theta_conn = (Omega p).dx along s -> L(gamma(s)): the
  // submanifold point has p = -u(gamma) and base x = gamma + u(gamma)/2,
  // so dx/ds = gamma' + (Du gamma')/2. Periodic trapezoid quadrature.
  double acc = 0.0;
  for (int k = 0; k < quad; ++k) {
    const LoopPoint lp = loop(static_cast<double>(k) / quad);
    if (static_cast<int>(lp.x.size()) != n ||
        static_cast<int>(lp.dx.size()) != n)
      throw DimError("loop sample dimension mismatch");
    Eigen::VectorXd gp(n);
    for (int i = 0; i < n; ++i) gp(i) = lp.dx[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd jac = psi.jacobian(lp.x);  // I + Du
    Eigen::VectorXd xdot = 0.5 * (gp + jac * gp);    // gamma' + Du gamma'/2
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) {
      p(i) = -psi.disp()[static_cast<std::size_t>(i)].eval(lp.x);
    }
    acc += (om * p).dot(xdot);
  }
  return circle_wrap(acc / quad);
}

LoopSampler transported_loop(const flows::MapLift& psi,
                             const std::vector<int>& winding,
                             std::span<const double> base) {
  const int n = psi.dim();
  if (static_cast<int>(winding.size()) != n)
    throw DimError("winding vector dimension does not match the map");
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  if (!base.empty()) {
    if (static_cast<int>(base.size()) != n)
      throw DimError("base point dimension mismatch");
    b.assign(base.begin(), base.end());
  }
  return [psi, winding, b, n](double s) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      x[static_cast<std::size_t>(i)] =
          b[static_cast<std::size_t>(i)] + s * winding[static_cast<std::size_t>(i)];
    LoopPoint lp;
    lp.x = psi.apply(x);
    const Eigen::MatrixXd jac = psi.jacobian(x);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w(i) = winding[static_cast<std::size_t>(i)];
    const Eigen::VectorXd dx = jac * w;
    lp.dx.assign(dx.data(), dx.data() + n);
    return lp;
  };
}

double holonomy_phi(const GroupoidModel& model, const Bisection& l,
                    const std::vector<int>& winding,
                    std::span<const double> base, int quad) {
  const int n = model.dim();
  if (static_cast<int>(winding.size()) != n)
    throw DimError("winding vector dimension does not match the model");
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  if (!base.empty()) {
    if (static_cast<int>(base.size()) != n)
      throw DimError("base point dimension mismatch");
    b.assign(base.begin(), base.end());
  }
  LoopSampler straight = [b, winding, n](double s) {
    LoopPoint lp;
    lp.x.resize(static_cast<std::size_t>(n));
    lp.dx.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      lp.x[static_cast<std::size_t>(i)] =
          b[static_cast<std::size_t>(i)] + s * winding[static_cast<std::size_t>(i)];
      lp.dx[static_cast<std::size_t>(i)] = winding[static_cast<std::size_t>(i)];
    }
    return lp;
  };
  return holonomy_phi_loop(model, l, straight, quad);
}

}  // namespace torusflux::groupoid
