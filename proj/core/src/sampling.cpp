// SPDX-License-Identifier: Apache-2.0
#include "torusflux/algebra/sampling.hpp"

namespace torusflux::algebra {

using spectral::OneForm;
using spectral::TrigPoly;

TrigPoly random_trigpoly(int dim, int band, std::mt19937& rng,
                         double amplitude) {
  std::uniform_real_distribution<double> uni(-amplitude, amplitude);
  TrigPoly f(dim);
  for (const auto& k : spectral::canonical_freqs(dim, band)) {
    const std::span<const int> ks(k.data(), static_cast<std::size_t>(dim));
    f += TrigPoly::harmonic_cos(dim, ks, uni(rng));
    f += TrigPoly::harmonic_sin(dim, ks, uni(rng));
  }
  return f;
}

OneForm random_closed_one_form(int dim, int band, std::mt19937& rng,
                               double amplitude) {
  std::uniform_real_distribution<double> uni(-amplitude, amplitude);
  std::vector<double> c(static_cast<std::size_t>(dim));
  for (auto& v : c) v = uni(rng);
  return spectral::constant_one_form(c) +
         random_exact_one_form(dim, band, rng, amplitude);
}

OneForm random_exact_one_form(int dim, int band, std::mt19937& rng,
                              double amplitude) {
  return spectral::d(random_trigpoly(dim, band, rng, amplitude));
}

}  // namespace torusflux::algebra
