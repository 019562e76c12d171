// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "torusflux/cli/report.hpp"
#include "torusflux/cli/scenario.hpp"

namespace torusflux::cli {

// Command-line overrides; zero keeps the task's (or the built-in) value.
// Precedence: override > task key > default.
struct RunOptions {
  int steps = 0;
  int grid = 0;
  double tolerance = 0.0;
};

// Execute every task of the scenario and assemble the report. Numerical
// gates tripped inside a task are rethrown as NumericalError with the task
// index attached.
Report run_scenario(const Scenario& s, const RunOptions& opts = {});

// Test seam for the invariant suite: sharp_sign scales the anchor map on
// one side of the anchor-morphism identity only. Anything but +1.0 breaks
// the identity quadratically on one side, so the suite must notice; the
// unit tests assert that it does.
struct SuiteHooks {
  double sharp_sign = 1.0;
};

// Cross-module invariant suite: bracket identities, pairing laws, flow
// quality, flux homomorphism laws, holonomy laws. A scenario, when given,
// contributes its symplectic structure to the structure sweep; everything
// else runs on the built-in models.
Suite verify_suite(const Scenario* s = nullptr, const SuiteHooks& hooks = {});

// The suite wrapped in a report with the standard provenance block.
Report verify_report(const Scenario* s = nullptr, const SuiteHooks& hooks = {});

// Plain-text catalog of the conventions and formulas implemented.
std::string explain_text();

}  // namespace torusflux::cli
