// SPDX-License-Identifier: Apache-2.0
#include "torusflux/cli/scenario.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "torusflux/spectral/expr.hpp"

namespace torusflux::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// Cursor over one value string, reporting file positions.
class ValueCursor {
 public:
  ValueCursor(const std::string& text, int line, int col0)
      : text_(text), line_(line), col0_(col0) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col0_ + static_cast<int>(pos_));
  }
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool match(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!match(c)) fail(std::string("expected '") + c + "'");
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }
  double number() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
      ++pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      ++pos_;
    double v = 0.0;
    auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || p != text_.data() + pos_ || pos_ == start) {
      pos_ = start;
      fail("expected a number");
    }
    return v;
  }
  std::string quoted() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '"')
      fail("expected a quoted expression");
    std::size_t end = text_.find('"', pos_ + 1);
    if (end == std::string::npos) fail("unterminated quote");
    std::string out = text_.substr(pos_ + 1, end - pos_ - 1);
    pos_ = end + 1;
    return out;
  }

 private:
  const std::string& text_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

std::vector<std::vector<double>> parse_rows(const std::string& v, int line,
                                            int col) {
  ValueCursor c(v, line, col);
  if (c.ident() != "rows") c.fail("expected rows(...)");
  c.expect('(');
  std::vector<std::vector<double>> rows;
  do {
    c.expect('(');
    std::vector<double> row;
    do {
      row.push_back(c.number());
    } while (c.match(','));
    c.expect(')');
    rows.push_back(std::move(row));
  } while (c.match(','));
  c.expect(')');
  if (!c.done()) c.fail("trailing characters after matrix");
  return rows;
}

int to_int(const std::string& v, int line, int col) {
  ValueCursor c(v, line, col);
  double d = c.number();
  if (!c.done()) c.fail("trailing characters after number");
  int i = static_cast<int>(std::lround(d));
  if (d != static_cast<double>(i)) c.fail("expected an integer");
  return i;
}

double to_double(const std::string& v, int line, int col) {
  ValueCursor c(v, line, col);
  double d = c.number();
  if (!c.done()) c.fail("trailing characters after number");
  return d;
}

IsotopyDesc parse_isotopy(const std::string& v, int line, int col) {
  ValueCursor c(v, line, col);
  IsotopyDesc d;
  d.kind = c.ident();
  if (d.kind != "translation" && d.kind != "shear" && d.kind != "hamiltonian" &&
      d.kind != "closed_form")
    c.fail("unknown isotopy kind '" + d.kind + "'");
  c.expect('(');
  if (!c.match(')')) {
    do {
      if (c.peek() == '"')
        d.exprs.push_back(c.quoted());
      else
        d.numbers.push_back(c.number());
    } while (c.match(','));
    c.expect(')');
  }
  if (!c.done()) c.fail("trailing characters after isotopy");
  return d;
}

struct Pair {
  std::string key, value;
  int line, col;
};

void validate_isotopy(const IsotopyDesc& d, int dim, int bandwidth, int line,
                      int col) {
  auto check_exprs = [&](std::size_t n) {
    if (d.exprs.size() != n)
      throw ParseError("isotopy '" + d.kind + "' takes " + std::to_string(n) +
                           " expression argument(s)",
                       line, col);
    for (const std::string& e : d.exprs) {
      spectral::TrigPoly p = spectral::parse_expression(e, dim);
      if (p.max_band() > bandwidth)
        throw ParseError("expression bandwidth exceeds the scenario cap", line,
                         col);
    }
  };
  if (d.kind == "translation") {
    if (static_cast<int>(d.numbers.size()) != dim || !d.exprs.empty())
      throw ParseError("translation takes dim numeric components", line, col);
  } else if (d.kind == "shear") {
    if (d.numbers.size() != 1)
      throw ParseError("shear takes an axis and one expression", line, col);
    const int axis = static_cast<int>(std::lround(d.numbers[0]));
    if (d.numbers[0] != static_cast<double>(axis) || axis < 0 || axis >= dim)
      throw ParseError("shear axis out of range", line, col);
    check_exprs(1);
  } else if (d.kind == "hamiltonian") {
    if (!d.numbers.empty())
      throw ParseError("hamiltonian takes one expression", line, col);
    check_exprs(1);
  } else {  // closed_form
    if (!d.numbers.empty())
      throw ParseError("closed_form takes dim expressions", line, col);
    check_exprs(static_cast<std::size_t>(dim));
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::string section;
  int task_index = -1;
  bool saw_space = false, saw_structure = false;
  std::vector<Pair> space_pairs, structure_pairs;
  std::vector<std::pair<int, std::vector<Pair>>> task_pairs;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string lt = trim(raw);
    if (lt.empty() || lt[0] == '#') continue;
    if (lt.front() == '[') {
      if (lt.back() != ']')
        throw ParseError("unterminated section header", lineno, 1);
      const std::string name = lt.substr(1, lt.size() - 2);
      if (name == "space") {
        if (saw_space) throw ParseError("duplicate [space] section", lineno, 1);
        saw_space = true;
        section = "space";
      } else if (name == "structure") {
        if (saw_structure)
          throw ParseError("duplicate [structure] section", lineno, 1);
        saw_structure = true;
        section = "structure";
      } else if (name.rfind("task.", 0) == 0) {
        const std::string num = name.substr(5);
        int idx = 0;
        auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), idx);
        if (ec != std::errc() || p != num.data() + num.size() || idx < 1)
          throw ParseError("bad task index in section header", lineno, 2);
        for (const auto& [existing, _] : task_pairs)
          if (existing == idx)
            throw ParseError("duplicate task index " + std::to_string(idx),
                             lineno, 1);
        task_index = idx;
        task_pairs.emplace_back(idx, std::vector<Pair>{});
        section = "task";
      } else {
        throw ParseError("unknown section [" + name + "]", lineno, 2);
      }
      continue;
    }
    const std::size_t eq = raw.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno, 1);
    Pair pr;
    pr.key = trim(raw.substr(0, eq));
    pr.value = trim(raw.substr(eq + 1));
    pr.line = lineno;
    pr.col = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    if (pr.key.empty()) throw ParseError("empty key", lineno, 1);
    if (pr.value.empty())
      throw ParseError("empty value for '" + pr.key + "'", lineno,
                       static_cast<int>(eq) + 2);
    if (section == "space")
      space_pairs.push_back(std::move(pr));
    else if (section == "structure")
      structure_pairs.push_back(std::move(pr));
    else if (section == "task")
      task_pairs.back().second.push_back(std::move(pr));
    else
      throw ParseError("key/value before any section", lineno, 1);
    (void)task_index;
  }

  if (!saw_space) throw ParseError("missing [space] section", lineno, 1);

  for (const Pair& p : space_pairs) {
    if (p.key == "dim") s.dim = to_int(p.value, p.line, p.col);
    else if (p.key == "bandwidth") s.bandwidth = to_int(p.value, p.line, p.col);
    else if (p.key == "grid") s.grid = to_int(p.value, p.line, p.col);
    else throw ParseError("unknown [space] key '" + p.key + "'", p.line, p.col);
    s.space_raw.emplace_back(p.key, p.value);
  }
  if (s.dim < 1 || s.dim > spectral::kMaxDim)
    throw ParseError("dim must be in [1, 8]", 1, 1);
  if (s.bandwidth < 1 || s.bandwidth > kBandwidthCap)
    throw ParseError("bandwidth must be in [1, 64]", 1, 1);
  if (s.grid < 4) throw ParseError("grid must be at least 4", 1, 1);

  for (const Pair& p : structure_pairs) {
    if (p.key == "symplectic") {
      const auto rows = parse_rows(p.value, p.line, p.col);
      if (static_cast<int>(rows.size()) != s.dim)
        throw ParseError("symplectic matrix must have dim rows", p.line, p.col);
      if (s.dim % 2 != 0)
        throw ParseError("even dimension required", p.line, p.col);
      s.omega.resize(s.dim, s.dim);
      for (int i = 0; i < s.dim; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != s.dim)
          throw ParseError("symplectic matrix row length mismatch", p.line,
                           p.col);
        for (int jj = 0; jj < s.dim; ++jj)
          s.omega(i, jj) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)];
      }
      for (int i = 0; i < s.dim; ++i)
        for (int jj = 0; jj < s.dim; ++jj)
          if (s.omega(i, jj) != -s.omega(jj, i))
            throw ParseError("symplectic matrix must be antisymmetric", p.line,
                             p.col);
      if (std::abs(s.omega.determinant()) < 1e-12)
        throw ParseError("symplectic matrix is degenerate", p.line, p.col);
      s.has_symplectic = true;
    } else if (p.key == "poisson") {
      if (p.value == "zero") {
        s.poisson_zero = true;
      } else {
        ValueCursor c(p.value, p.line, p.col);
        if (c.ident() != "upper")
          c.fail("expected zero or upper(\"...\", ...)");
        c.expect('(');
        do {
          s.poisson_upper.push_back(c.quoted());
        } while (c.match(','));
        c.expect(')');
        if (!c.done()) c.fail("trailing characters after poisson tensor");
        const std::size_t need =
            static_cast<std::size_t>(s.dim) * (s.dim - 1) / 2;
        if (s.poisson_upper.size() != need)
          throw ParseError("poisson upper triangle needs " +
                               std::to_string(need) + " entries",
                           p.line, p.col);
        for (const std::string& e : s.poisson_upper)
          (void)spectral::parse_expression(e, s.dim);
      }
    } else {
      throw ParseError("unknown [structure] key '" + p.key + "'", p.line,
                       p.col);
    }
    s.structure_raw.emplace_back(p.key, p.value);
  }
  if ((s.has_symplectic ? 1 : 0) + (s.poisson_zero ? 1 : 0) +
          (s.poisson_upper.empty() ? 0 : 1) >
      1)
    throw ParseError("structure must declare exactly one of symplectic/poisson",
                     1, 1);

  for (auto& [idx, pairs] : task_pairs) {
    TaskDesc t;
    t.index = idx;
    for (const Pair& p : pairs) {
      if (p.key == "type") {
        t.type = p.value;
        if (t.type != "flux" && t.type != "pair" && t.type != "holonomy" &&
            t.type != "verify")
          throw ParseError("unknown task type '" + t.type + "'", p.line, p.col);
      } else if (p.key == "isotopy") {
        t.isotopy = parse_isotopy(p.value, p.line, p.col);
      } else if (p.key == "loops") {
        const auto rows = parse_rows(p.value, p.line, p.col);
        for (const auto& r : rows) {
          std::vector<int> w;
          for (double v : r) {
            const int i = static_cast<int>(std::lround(v));
            if (v != static_cast<double>(i))
              throw ParseError("loop winding entries must be integers", p.line,
                               p.col);
            w.push_back(i);
          }
          if (static_cast<int>(w.size()) != s.dim)
            throw ParseError("loop winding length must equal dim", p.line,
                             p.col);
          t.loops.push_back(std::move(w));
        }
      } else if (p.key == "steps") {
        t.steps = to_int(p.value, p.line, p.col);
        if (t.steps < 4 || t.steps % 4 != 0)
          throw ParseError("steps must be a positive multiple of 4", p.line,
                           p.col);
      } else if (p.key == "prefixes") {
        t.prefixes = to_int(p.value, p.line, p.col);
        if (t.prefixes < 0)
          throw ParseError("prefixes must be nonnegative", p.line, p.col);
      } else if (p.key == "tolerance") {
        t.tolerance = to_double(p.value, p.line, p.col);
        if (!(t.tolerance > 0))
          throw ParseError("tolerance must be positive", p.line, p.col);
      } else {
        throw ParseError("unknown task key '" + p.key + "'", p.line, p.col);
      }
      t.raw.emplace_back(p.key, p.value);
    }
    if (t.type.empty())
      throw ParseError("task " + std::to_string(idx) + " has no type", 1, 1);
    const Pair& first = pairs.empty() ? Pair{"", "", 1, 1} : pairs.front();
    if (t.type == "flux" || t.type == "holonomy") {
      if (!t.isotopy)
        throw ParseError("task " + std::to_string(idx) + " needs an isotopy",
                         first.line, first.col);
      if (!s.has_symplectic)
        throw ParseError(
            "flux/holonomy tasks need a symplectic structure (even dimension "
            "required)",
            first.line, first.col);
      validate_isotopy(*t.isotopy, s.dim, s.bandwidth, first.line, first.col);
    }
    if (t.type == "holonomy" && t.loops.empty())
      throw ParseError("holonomy task needs loops", first.line, first.col);
    if (t.type == "pair" && !s.has_symplectic && !s.poisson_zero &&
        s.poisson_upper.empty())
      throw ParseError("pair task needs a structure", first.line, first.col);
    s.tasks.push_back(std::move(t));
  }
  std::sort(s.tasks.begin(), s.tasks.end(),
            [](const TaskDesc& a, const TaskDesc& b) { return a.index < b.index; });
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "[space]\n";
  for (const auto& [k, v] : s.space_raw) out << k << " = " << v << "\n";
  if (!s.structure_raw.empty()) {
    out << "\n[structure]\n";
    for (const auto& [k, v] : s.structure_raw) out << k << " = " << v << "\n";
  }
  for (const TaskDesc& t : s.tasks) {
    out << "\n[task." << t.index << "]\n";
    for (const auto& [k, v] : t.raw) out << k << " = " << v << "\n";
  }
  return out.str();
}

}  // namespace torusflux::cli
