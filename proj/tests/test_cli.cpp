// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "torusflux/cli/report.hpp"
#include "torusflux/cli/run.hpp"
#include "torusflux/cli/scenario.hpp"

using namespace torusflux;
using namespace torusflux::cli;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TORUSFLUX_SCENARIO_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kMinimalHeader =
    "[space]\n"
    "dim = 2\n"
    "bandwidth = 16\n"
    "grid = 32\n"
    "\n"
    "[structure]\n"
    "symplectic = rows((0, 1), (-1, 0))\n"
    "\n";

const Agreement& find_agreement(const TaskResult& t, const std::string& name) {
  for (const auto& a : t.agreements)
    if (a.name == name) return a;
  REQUIRE_MESSAGE(false, "agreement not found: " << name);
  static Agreement dummy;
  return dummy;
}

}  // namespace

TEST_CASE("shipped scenarios round-trip byte for byte") {
  const std::vector<std::string> files{
      "t2_translation.scn", "t2_shear.scn",         "t2_hamiltonian.scn",
      "t2_exp_dx.scn",      "t4_pairing.scn",       "t4_scaled_pairing.scn",
      "t2_lattice_loop.scn", "t2_verify.scn",       "t3_twisted_pair.scn"};
  for (const auto& name : files) {
    CAPTURE(name);
    const std::string text = slurp(name);
    const Scenario s = parse_scenario(text);
    CHECK(serialize_scenario(s) == text);
  }
}

TEST_CASE("the parser rejects malformed scenarios with positions") {
  // no [space] section
  CHECK_THROWS_AS((void)parse_scenario("[task.1]\ntype = flux\n"), ParseError);

  // symplectic structure on an odd-dimensional torus
  CHECK_THROWS_AS(
      (void)parse_scenario("[space]\ndim = 3\n\n[structure]\n"
                           "symplectic = rows((0, 1, 0), (-1, 0, 0), (0, 0, 0))\n"),
      ParseError);

  // unknown isotopy kind
  CHECK_THROWS_AS(
      (void)parse_scenario(std::string(kMinimalHeader) +
                           "[task.1]\ntype = flux\nisotopy = wobble(1)\n"),
      ParseError);

  // steps must be a positive multiple of 4
  CHECK_THROWS_AS((void)parse_scenario(std::string(kMinimalHeader) +
                                       "[task.1]\ntype = flux\n"
                                       "isotopy = translation(0.1, 0)\n"
                                       "steps = 6\n"),
                  ParseError);

  // holonomy needs loops
  CHECK_THROWS_AS((void)parse_scenario(std::string(kMinimalHeader) +
                                       "[task.1]\ntype = holonomy\n"
                                       "isotopy = translation(0.1, 0)\n"),
                  ParseError);

  // pair needs some structure
  CHECK_THROWS_AS(
      (void)parse_scenario("[space]\ndim = 2\nbandwidth = 16\ngrid = 32\n\n"
                           "[task.1]\ntype = pair\n"),
      ParseError);

  // duplicate task indices collide
  CHECK_THROWS_AS((void)parse_scenario(std::string(kMinimalHeader) +
                                       "[task.1]\ntype = pair\n\n"
                                       "[task.1]\ntype = pair\n"),
                  ParseError);

  // the reported position is usable
  try {
    (void)parse_scenario("[space]\ndim = 99\n");
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
    CHECK(e.col >= 1);
  }
}

TEST_CASE("reports are deterministic and canonically formatted") {
  const Scenario s = parse_scenario(slurp("t4_pairing.scn"));
  const Report r1 = run_scenario(s);
  const Report r2 = run_scenario(s);
  const std::string j1 = emit_report(r1, "json");
  const std::string j2 = emit_report(r2, "json");
  CHECK(j1 == j2);
  CHECK(!j1.empty());
  CHECK(j1.back() == '\n');

  // canonical: parsing and re-dumping the json reproduces the bytes
  const auto parsed = nlohmann::ordered_json::parse(j1);
  CHECK(parsed.dump() + "\n" == j1);

  // the text rendering carries every deviation the json carries
  const std::string text = emit_report(r1, "text");
  for (const auto& t : r1.tasks)
    for (const auto& a : t.agreements) {
      CAPTURE(a.name);
      CHECK(text.find(a.name) != std::string::npos);
      CHECK(text.find(format_number(a.deviation)) != std::string::npos);
    }
}

TEST_CASE("translation scenarios pass their gates at any step count") {
  const Scenario s = parse_scenario(slurp("t2_translation.scn"));
  RunOptions o;
  o.steps = 8;  // coarse override: the family is linear in time
  const Report r = run_scenario(s, o);
  REQUIRE(r.tasks.size() == 2);
  for (const auto& t : r.tasks)
    for (const auto& a : t.agreements) {
      CAPTURE(t.type);
      CAPTURE(a.name);
      CHECK(a.pass);
    }
  // provenance is ordered and stable
  REQUIRE(!r.provenance.empty());
  CHECK(r.provenance.front().first == "version");
}

TEST_CASE("a degenerate pairing is reported, not silenced") {
  const Scenario s = parse_scenario(slurp("t3_twisted_pair.scn"));
  const Report r = run_scenario(s);
  REQUIRE(r.tasks.size() == 1);
  const TaskResult& t = r.tasks.front();
  CHECK(find_agreement(t, "mu_antisymmetric").pass);
  // rank-two tensor on a three-torus: the pairing cannot be inverted
  CHECK_FALSE(find_agreement(t, "mu_inverse_bounded").pass);
}

TEST_CASE("scenario-driven verification embeds the suite once") {
  const Scenario s = parse_scenario(slurp("t2_verify.scn"));
  const Report r = run_scenario(s);
  REQUIRE(r.suite.has_value());
  CHECK(r.suite->failed == 0);
  CHECK(r.suite->passed > 25);
  // every check reports the measured residual with its threshold; a zero
  // tolerance is an exact-arithmetic claim and must come with a zero residual
  for (const auto& c : r.suite->checks) {
    CAPTURE(c.name);
    CHECK(!c.name.empty());
    CHECK(c.tolerance >= 0.0);
    if (c.tolerance == 0.0) CHECK(c.residual == 0.0);
  }
}

TEST_CASE("a flipped sharp sign cannot pass the morphism check") {
  SuiteHooks hooks;
  hooks.sharp_sign = -1.0;
  const Suite suite = verify_suite(nullptr, hooks);
  CHECK(suite.failed > 0);
  bool found = false;
  for (const auto& c : suite.checks)
    if (c.name == "anchor_is_bracket_morphism") {
      found = true;
      CHECK_FALSE(c.pass);
    }
  CHECK(found);
}

TEST_CASE("the explainer stands alone") {
  const std::string text = explain_text();
  CHECK(text.find("flux") != std::string::npos);
  CHECK(text.find("exit") != std::string::npos);
  CHECK(text.find("[space]") != std::string::npos);
}
