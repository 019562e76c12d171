// SPDX-License-Identifier: Apache-2.0
#include "torusflux/spectral/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace torusflux::spectral {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool match(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c, const char* what) {
    if (!match(c)) fail(std::string("expected '") + c + "' " + what);
  }
  bool match_word(std::string_view w) {
    skip_ws();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    pos_ += w.size();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, 1, static_cast<int>(pos_) + 1);
  }

  double number() {
    skip_ws();
    if (pos_ >= s_.size() || !(std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      fail("expected a number");
    double v = 0.0;
    const char* begin = s_.data() + pos_;
    const char* end = s_.data() + s_.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{}) fail("malformed number");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    return v;
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected an integer");
    int v = 0;
    const char* begin = s_.data() + start;
    const auto res = std::from_chars(begin, s_.data() + s_.size(), v);
    if (res.ec != std::errc{}) fail("integer out of range");
    pos_ = start + static_cast<std::size_t>(res.ptr - begin);
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// trig := (cos|sin) ( 2*pi*( k1, k2, ... ).x )
TrigPoly parse_trig(Cursor& cur, int dim, double amplitude) {
  bool is_cos;
  if (cur.match_word("cos")) {
    is_cos = true;
  } else if (cur.match_word("sin")) {
    is_cos = false;
  } else {
    cur.fail("expected cos or sin");
  }
  cur.expect('(', "after cos/sin");
  if (!cur.match_word("2")) cur.fail("expected 2*pi*(...)");
  cur.expect('*', "in 2*pi");
  if (!cur.match_word("pi")) cur.fail("expected pi");
  cur.expect('*', "after pi");
  cur.expect('(', "to open the frequency tuple");
  std::vector<int> k;
  k.push_back(cur.integer());
  while (cur.match(',')) k.push_back(cur.integer());
  cur.expect(')', "to close the frequency tuple");
  cur.expect('.', "before x");
  if (!cur.match_word("x")) cur.fail("expected x after frequency tuple");
  cur.expect(')', "to close cos/sin");
  if (static_cast<int>(k.size()) != dim)
    cur.fail("frequency tuple has " + std::to_string(k.size()) +
             " entries, expected " + std::to_string(dim));
  for (int ki : k)
    if (std::abs(ki) > kMaxFreqComponent)
      cur.fail("frequency component exceeds the representable range");
  return is_cos ? TrigPoly::harmonic_cos(dim, k, amplitude)
                : TrigPoly::harmonic_sin(dim, k, amplitude);
}

// term := number [* trig] | trig
TrigPoly parse_term(Cursor& cur, int dim) {
  const char c = cur.peek();
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
    const double v = cur.number();
    if (cur.match('*')) return parse_trig(cur, dim, v);
    return TrigPoly::constant(dim, v);
  }
  return parse_trig(cur, dim, 1.0);
}

void append_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

TrigPoly parse_expression(std::string_view text, int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw DimError("dimension must be in [1, 8], got " + std::to_string(dim));
  Cursor cur(text);
  if (cur.at_end()) cur.fail("empty expression");
  TrigPoly sum(dim);
  double sign = 1.0;
  if (cur.match('-')) sign = -1.0;
  else cur.match('+');
  while (true) {
    TrigPoly t = parse_term(cur, dim);
    t *= sign;
    sum += t;
    if (cur.at_end()) break;
    if (cur.match('+')) sign = 1.0;
    else if (cur.match('-')) sign = -1.0;
    else cur.fail("expected '+', '-', or end of expression");
  }
  return sum;
}

std::string format_expression(const TrigPoly& f) {
  // Rebuild amplitudes of the real basis from the canonical half of the
  // coefficient map: c(+k) = (a - i b) / 2 for a*cos + b*sin.
  std::string out;
  const double mean = f.mean();
  if (mean != 0.0) append_number(out, mean);
  std::array<int, kMaxDim> k{};
  for (const auto& [key, c] : f.terms()) {
    if (freq_is_zero(key) || !freq_canonical(key, f.dim())) continue;
    const double a = 2.0 * c.real();
    const double b = -2.0 * c.imag();
    for (const char* name : {"cos", "sin"}) {
      const double amp = name[0] == 'c' ? a : b;
      if (amp == 0.0) continue;
      if (!out.empty()) out += amp < 0 ? " - " : " + ";
      else if (amp < 0) out += "-";
      append_number(out, std::abs(amp));
      out += "*";
      out += name;
      out += "(2*pi*(";
      freq_unpack(key, f.dim(), k.data());
      for (int i = 0; i < f.dim(); ++i) {
        if (i) out += ",";
        out += std::to_string(k[i]);
      }
      out += ").x)";
    }
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace torusflux::spectral
