// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace torusflux {

// Default numeric policy. Exact-arithmetic assertions run at kExactTol
// (accumulated roundoff), grid/oracle comparisons at kGridTol.
inline constexpr int kBandwidthCap = 64;     // per-axis frequency cap
inline constexpr int kDefaultGrid = 256;     // per-axis samples on T^2
inline constexpr int kDefaultTimeSteps = 200;
inline constexpr double kExactTol = 1e-12;
inline constexpr double kGridTol = 1e-8;
inline constexpr double kJacobiGateTol = 1e-8;    // admission gate for Poisson tensors
inline constexpr double kClosedTol = 1e-8;        // closedness gate for one-forms
inline constexpr double kAliasingBound = 1e-7;    // map-composition re-interpolation bound

struct DimError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AxisError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Product bandwidth would exceed the cap and truncation was not requested.
struct BandwidthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Isotopy time parameter outside [0, 1].
struct TimeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A one-form failed a closedness precondition; carries the measured ||d theta||.
struct NotClosedError : std::runtime_error {
  double residual;
  explicit NotClosedError(const std::string& what, double r)
      : std::runtime_error(what), residual(r) {}
};

// An admission gate (Jacobi identity, lagrangian/symplectomorphism check,
// isotopy endpoint match) failed; carries the measured residual.
struct GateError : std::runtime_error {
  double residual;
  explicit GateError(const std::string& what, double r)
      : std::runtime_error(what), residual(r) {}
};

// Numerical failure at run time: nonconvergent quadrature or fixed-point
// iteration, aliasing bound exceeded, singular pairing matrix.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  int line;  // 1-based
  int col;   // 1-based
  ParseError(const std::string& what, int line_, int col_)
      : std::runtime_error(what + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ")"),
        line(line_), col(col_) {}
};

}  // namespace torusflux
