// SPDX-License-Identifier: Apache-2.0
#include "torusflux/algebra/koszul.hpp"

#include <algorithm>
#include <random>

#include "torusflux/algebra/cohomology.hpp"
#include "torusflux/algebra/sampling.hpp"

namespace torusflux::algebra {

using spectral::commutator;
using spectral::constant_one_form;
using spectral::d;
using spectral::interior;
using spectral::lie;
using spectral::pairing;
using spectral::sharp;
using spectral::sup_bound;
using spectral::VectorField;

OneForm koszul_bracket(const PoissonTensor& pi, const OneForm& omega,
                       const OneForm& theta) {
  pi.require_poisson();
  const VectorField x_omega = sharp(pi, omega);
  const VectorField x_theta = sharp(pi, theta);
  return lie(x_omega, theta) - lie(x_theta, omega) -
         d(pairing(pi, omega, theta));
}

ExtElement central_ext_bracket(const PoissonTensor& pi, const ExtElement& a,
                               const ExtElement& b) {
  pi.require_poisson();
  if (a.f.dim() != pi.dim() || b.f.dim() != pi.dim())
    throw DimError("extension element dimension does not match tensor");
  const VectorField x_zeta = sharp(pi, a.zeta);
  const VectorField x_eta = sharp(pi, b.zeta);
  TrigPoly f = interior(x_zeta, d(b.f));
  f -= interior(x_eta, d(a.f));
  f += pairing(pi, a.zeta, b.zeta);
  return {koszul_bracket(pi, a.zeta, b.zeta), std::move(f)};
}

double ExactSequenceReport::max_residual() const {
  return std::max({ker_d_residual, class_of_exact_residual,
                   basis_realized_residual, bracket_exactness_residual});
}

ExactSequenceReport exact_sequence_report(const PoissonTensor& pi, int samples,
                                          unsigned seed) {
  pi.require_poisson();
  const int n = pi.dim();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  ExactSequenceReport rep;

  for (int s = 0; s < samples; ++s) {
    // Constants are the kernel of d.
    const TrigPoly c = TrigPoly::constant(n, uni(rng));
    rep.ker_d_residual = std::max(rep.ker_d_residual, sup_bound(d(c)));

    // Exact forms have zero class.
    const TrigPoly f = random_trigpoly(n, 2, rng, 0.5);
    rep.class_of_exact_residual = std::max(
        rep.class_of_exact_residual, exactness_residual(d(f)));

    // Each basis class is realized by dx_i plus any exact perturbation.
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(s) % n] = 1.0;
    OneForm rep_i = constant_one_form(e) + random_exact_one_form(n, 2, rng, 0.5);
    Eigen::VectorXd cls = cohomology_class(rep_i).coeffs;
    cls(s % n) -= 1.0;
    rep.basis_realized_residual =
        std::max(rep.basis_realized_residual, cls.cwiseAbs().maxCoeff());

    // Brackets of closed forms are exact: H^1 carries the trivial bracket.
    const OneForm t1 = random_closed_one_form(n, 2, rng, 0.5);
    const OneForm t2 = random_closed_one_form(n, 2, rng, 0.5);
    const OneForm br = koszul_bracket(pi, t1, t2);
    const double r =
        std::max(closedness_residual(br), exactness_residual(br));
    rep.bracket_exactness_residual = std::max(rep.bracket_exactness_residual, r);
  }
  return rep;
}

}  // namespace torusflux::algebra
