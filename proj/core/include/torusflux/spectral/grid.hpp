// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "torusflux/spectral/trigpoly.hpp"

namespace torusflux::spectral {

// Result of projecting grid samples back onto a frequency band. The
// aliasing norm is the L^2 norm of the sample spectrum that fell outside
// the requested band; energy aliased *into* the band from frequencies
// congruent mod N is inherently invisible to a sampled transform and is
// not included.
struct CoeffResult {
  TrigPoly poly;
  double aliasing_l2 = 0.0;
};

// Evaluate f on the uniform N^dim lattice x_j = j / N (row-major, axis 0
// slowest). Uses an FFT when N >= 2 * max_band + 1, direct evaluation
// otherwise.
std::vector<double> to_grid(const TrigPoly& f, int N);

// Project N^dim samples (same layout as to_grid) onto the band
// |k|_inf <= bandwidth. Requires N >= 2 * bandwidth + 2 so every retained
// frequency owns a distinct DFT bin with margin; throws GridError
// otherwise. The returned polynomial is exactly real-symmetric: paired
// bins are conjugate-averaged and the zero mode keeps only its real part.
CoeffResult to_coeffs(const std::vector<double>& samples, int dim, int N,
                      int bandwidth);

}  // namespace torusflux::spectral
