// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "torusflux/spectral/forms.hpp"

namespace torusflux::algebra {

// Deterministic band-limited samples for property checks. All draws use a
// caller-owned engine so suites are reproducible end to end.

// Real trig polynomial with independent uniform(-amplitude, amplitude)
// cos/sin amplitudes on every canonical frequency 0 < |k|_inf <= band.
spectral::TrigPoly random_trigpoly(int dim, int band, std::mt19937& rng,
                                   double amplitude = 1.0);

// Closed one-form: constant part + d(random function).
spectral::OneForm random_closed_one_form(int dim, int band, std::mt19937& rng,
                                         double amplitude = 1.0);

// Exact one-form d(random function).
spectral::OneForm random_exact_one_form(int dim, int band, std::mt19937& rng,
                                        double amplitude = 1.0);

}  // namespace torusflux::algebra
