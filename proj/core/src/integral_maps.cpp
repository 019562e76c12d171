// SPDX-License-Identifier: Apache-2.0
#include "torusflux/groupoid/integral_maps.hpp"

#include <Eigen/LU>
#include <cmath>

#include "torusflux/algebra/pairings.hpp"

namespace torusflux::groupoid {

namespace {

void require_torus(const GroupoidModel& model, const char* what) {
  if (model.kind() != ModelKind::SymplecticTorus)
    throw NumericalError(std::string(what) +
                         " needs the symplectic torus model (no cocycle basis "
                         "otherwise)");
}

}  // namespace

Eigen::VectorXd epsilon(const GroupoidModel& model, const Bisection& l) {
  require_torus(model, "epsilon");
  const std::vector<double> m = l.lift().mean_disp();
  Eigen::VectorXd out(model.dim());
  for (int i = 0; i < model.dim(); ++i) out(i) = -m[static_cast<std::size_t>(i)];
  return out;
}

double epsilon_pairing(const GroupoidModel& model, const Bisection& l,
                       const GroupoidCocycle& j, int grid) {
  require_torus(model, "epsilon");
  const int n = model.dim();
  if (j.linear.size() != n)
    throw DimError("cocycle linear part dimension mismatch");
  if (j.boundary_h.dim() != n)
    throw DimError("cocycle coboundary dimension mismatch");
  const Eigen::VectorXd eps = epsilon(model, l);
  double value = j.linear.dot(eps);
  if (j.boundary_h.is_zero()) return value;

  // Coboundary term: mean over the base of H(psi(x)) - H(x); the first
  // integral is evaluated by lattice quadrature (spectrally accurate), the
  // second is the exact zero mode.
  const flows::MapLift& psi = l.lift();
  if (grid == 0) {
    grid = std::max(64, 4 * (j.boundary_h.max_band() + psi.max_band()) + 4);
    if (n >= 3) grid = std::min(grid, n == 3 ? 96 : 32);
  }
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) {
    total *= static_cast<std::size_t>(grid);
    if (total > (std::size_t{1} << 24))
      throw GridError("cocycle quadrature grid exceeds the size guard");
  }
  double acc = 0.0;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rem = p;
    for (int a = n - 1; a >= 0; --a) {
      x[static_cast<std::size_t>(a)] =
          static_cast<double>(rem % static_cast<std::size_t>(grid)) / grid;
      rem /= static_cast<std::size_t>(grid);
    }
    acc += j.boundary_h.eval(psi.apply(x));
  }
  value += acc / static_cast<double>(total) - j.boundary_h.mean();
  return value;
}

Eigen::VectorXd lambda_map(const GroupoidModel& model, const Bisection& l) {
  require_torus(model, "lambda");
  return -epsilon(model, l);
}

algebra::CohomologyClass flux_via_lambda(const GroupoidModel& model,
                                         const Bisection& l) {
  require_torus(model, "flux_via_lambda");
  const Eigen::MatrixXd mu = algebra::mu_matrix(model.pi());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(mu);
  if (!lu.isInvertible())
    throw NumericalError("singular pairing matrix: endpoint flux undefined");
  algebra::CohomologyClass out;
  out.coeffs = lu.solve(lambda_map(model, l));
  return out;
}

}  // namespace torusflux::groupoid
