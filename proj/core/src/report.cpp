// SPDX-License-Identifier: Apache-2.0
#include "torusflux/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "torusflux/common.hpp"

namespace torusflux::cli {

using ordered_json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

namespace {

ordered_json num(double v) { return ordered_json(format_number(v)); }

ordered_json vec(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

ordered_json to_json(const Report& r) {
  ordered_json doc;
  doc["tasks"] = ordered_json::array();
  for (const TaskResult& t : r.tasks) {
    ordered_json jt;
    jt["index"] = t.index;
    jt["type"] = t.type;
    jt["pipelines"] = ordered_json::array();
    for (const Pipeline& p : t.pipelines)
      jt["pipelines"].push_back({{"name", p.name}, {"value", vec(p.value)}});
    jt["agreements"] = ordered_json::array();
    for (const Agreement& a : t.agreements)
      jt["agreements"].push_back({{"name", a.name},
                                  {"deviation", num(a.deviation)},
                                  {"tolerance", num(a.tolerance)},
                                  {"pass", a.pass}});
    jt["scalars"] = ordered_json::array();
    for (const Scalar& s : t.scalars)
      jt["scalars"].push_back({{"name", s.name}, {"value", num(s.value)}});
    jt["matrices"] = ordered_json::array();
    for (const NamedMatrix& m : t.matrices) {
      ordered_json rows = ordered_json::array();
      for (int i = 0; i < m.value.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.value.cols(); ++j) row.push_back(num(m.value(i, j)));
        rows.push_back(std::move(row));
      }
      jt["matrices"].push_back({{"name", m.name}, {"rows", std::move(rows)}});
    }
    jt["notes"] = t.notes;
    doc["tasks"].push_back(std::move(jt));
  }
  if (r.suite) {
    ordered_json js;
    js["checks"] = ordered_json::array();
    for (const SuiteCheck& c : r.suite->checks)
      js["checks"].push_back({{"name", c.name},
                              {"residual", num(c.residual)},
                              {"tolerance", num(c.tolerance)},
                              {"pass", c.pass}});
    js["passed"] = r.suite->passed;
    js["failed"] = r.suite->failed;
    doc["suite"] = std::move(js);
  } else {
    doc["suite"] = nullptr;
  }
  ordered_json prov;
  for (const auto& [k, v] : r.provenance) prov[k] = v;
  doc["provenance"] = std::move(prov);
  return doc;
}

std::string to_text(const Report& r) {
  std::ostringstream out;
  for (const TaskResult& t : r.tasks) {
    out << "task " << t.index << " (" << t.type << ")\n";
    for (const Pipeline& p : t.pipelines) {
      out << "  " << p.name << " =";
      for (double x : p.value) out << " " << format_number(x);
      out << "\n";
    }
    for (const Agreement& a : t.agreements)
      out << "  " << a.name << ": deviation " << format_number(a.deviation)
          << " vs tolerance " << format_number(a.tolerance) << " -> "
          << (a.pass ? "pass" : "FAIL") << "\n";
    for (const Scalar& s : t.scalars)
      out << "  " << s.name << " = " << format_number(s.value) << "\n";
    for (const NamedMatrix& m : t.matrices) {
      out << "  " << m.name << ":\n";
      for (int i = 0; i < m.value.rows(); ++i) {
        out << "   ";
        for (int j = 0; j < m.value.cols(); ++j)
          out << " " << format_number(m.value(i, j));
        out << "\n";
      }
    }
    for (const std::string& n : t.notes) out << "  note: " << n << "\n";
  }
  if (r.suite) {
    out << "suite: " << r.suite->passed << " passed, " << r.suite->failed
        << " failed\n";
    for (const SuiteCheck& c : r.suite->checks)
      out << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.name
          << "  residual " << format_number(c.residual) << " vs "
          << format_number(c.tolerance) << "\n";
  }
  out << "provenance:\n";
  for (const auto& [k, v] : r.provenance) out << "  " << k << " = " << v << "\n";
  return out.str();
}

}  // namespace

std::string emit_report(const Report& r, const std::string& format) {
  if (format == "json") return to_json(r).dump() + "\n";
  if (format == "text") return to_text(r);
  throw DimError("unknown report format '" + format + "'");
}

}  // namespace torusflux::cli
