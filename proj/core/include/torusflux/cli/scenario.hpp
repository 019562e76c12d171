// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "torusflux/common.hpp"

namespace torusflux::cli {

// Parsed isotopy descriptor: translation(c...), shear(axis, "g"),
// hamiltonian("f"), closed_form("theta_1", ..., "theta_n").
struct IsotopyDesc {
  std::string kind;
  std::vector<double> numbers;     // translation components / shear axis
  std::vector<std::string> exprs;  // expression arguments, unquoted
};

struct TaskDesc {
  int index = 0;     // N of [task.N]
  std::string type;  // flux | pair | holonomy | verify
  std::optional<IsotopyDesc> isotopy;
  std::vector<std::vector<int>> loops;  // holonomy winding vectors
  int steps = 0;                        // 0 = default
  int prefixes = 0;                     // flux: also report prefix fluxes
  double tolerance = 0.0;               // 0 = per-type default
  // Raw key/value lines in file order, for canonical re-serialization.
  std::vector<std::pair<std::string, std::string>> raw;
};

// Declarative scenario: a torus model, one structure, and a task list.
// Canonically-formatted text (sections in order, `key = value`, one blank
// line between sections, no comments) round-trips byte-identically through
// parse + serialize.
struct Scenario {
  int dim = 0;
  int bandwidth = kBandwidthCap;
  int grid = kDefaultGrid;

  bool has_symplectic = false;
  Eigen::MatrixXd omega;
  bool poisson_zero = false;
  std::vector<std::string> poisson_upper;  // strict upper triangle, row-major

  std::vector<TaskDesc> tasks;

  std::vector<std::pair<std::string, std::string>> space_raw;
  std::vector<std::pair<std::string, std::string>> structure_raw;
};

// Parse and fully validate; throws ParseError with 1-based position.
Scenario parse_scenario(const std::string& text);

// Canonical serialization (inverse of parse_scenario on canonical input).
std::string serialize_scenario(const Scenario& s);

}  // namespace torusflux::cli
