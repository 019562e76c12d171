// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

namespace torusflux::cli {

// A named value computed by one independent pipeline.
struct Pipeline {
  std::string name;
  std::vector<double> value;
};

// A numeric agreement claim: always the measured deviation plus the
// tolerance it was judged against, never a bare verdict.
struct Agreement {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Scalar {
  std::string name;
  double value = 0.0;
};

struct NamedMatrix {
  std::string name;
  Eigen::MatrixXd value;
};

struct TaskResult {
  int index = 0;
  std::string type;
  std::vector<Pipeline> pipelines;
  std::vector<Agreement> agreements;
  std::vector<Scalar> scalars;
  std::vector<NamedMatrix> matrices;
  std::vector<std::string> notes;
};

struct SuiteCheck {
  std::string name;
  double residual = 0.0;   // measured value
  double tolerance = 0.0;  // threshold judged against
  bool pass = false;
};

struct Suite {
  std::vector<SuiteCheck> checks;
  int passed = 0;
  int failed = 0;
};

struct Report {
  std::vector<TaskResult> tasks;
  std::optional<Suite> suite;
  // Ordered provenance: tolerances, resolutions, convention flags.
  std::vector<std::pair<std::string, std::string>> provenance;
};

// Numbers in reports: decimal strings with 15 significant digits.
std::string format_number(double v);

// format = "json" (canonical, byte-stable) or "text" (human summary that
// contains every deviation the json contains).
std::string emit_report(const Report& r, const std::string& format);

}  // namespace torusflux::cli
