// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

#include "torusflux/spectral/trigpoly.hpp"

namespace torusflux::spectral {

// Parse a sum-of-harmonics expression such as
//   1 + 0.5*cos(2*pi*(1,0).x) - sin(2*pi*(0,2).x)
// into a trig polynomial on T^dim. Grammar:
//   expr   := [+|-] term ((+|-) term)*
//   term   := number [* trig] | trig
//   trig   := (cos|sin) ( 2*pi*( int {, int} ).x )
// Frequency tuples must have exactly dim entries. Errors are reported as
// ParseError with 1-based column positions (line is always 1; callers
// embedding expressions in larger documents rebase the position).
TrigPoly parse_expression(std::string_view text, int dim);

// Canonical rendering in the same grammar; parse_expression is its exact
// inverse for the coefficient map (modulo term ordering and formatting).
std::string format_expression(const TrigPoly& f);

}  // namespace torusflux::spectral
