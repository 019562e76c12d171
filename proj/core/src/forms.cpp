// SPDX-License-Identifier: Apache-2.0
#include "torusflux/spectral/forms.hpp"

#include <algorithm>

namespace torusflux::spectral {

namespace {

int require_dim(const std::vector<TrigPoly>& comps) {
  if (comps.empty()) throw DimError("empty component tuple");
  const int dim = comps.front().dim();
  if (static_cast<int>(comps.size()) != dim)
    throw DimError("component count " + std::to_string(comps.size()) +
                   " does not match dimension " + std::to_string(dim));
  for (const auto& c : comps)
    if (c.dim() != dim) throw DimError("mixed dimensions in component tuple");
  return dim;
}

void require_same(const std::vector<TrigPoly>& a,
                  const std::vector<TrigPoly>& b) {
  if (require_dim(a) != require_dim(b))
    throw DimError("dimension mismatch between component tuples");
}

}  // namespace

TwoForm::TwoForm(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim)
    throw DimError("dimension must be in [1, 8], got " + std::to_string(dim));
  c_.assign(static_cast<std::size_t>(dim) * (dim - 1) / 2, TrigPoly(dim));
}

std::size_t TwoForm::flat(int i, int j) const {
  // i < j assumed by callers; row i starts after sum of previous row lengths.
  const std::size_t row =
      static_cast<std::size_t>(i) * (2 * dim_ - i - 1) / 2;
  return row + static_cast<std::size_t>(j - i - 1);
}

TrigPoly TwoForm::comp(int i, int j) const {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
    throw AxisError("two-form index out of range");
  if (i == j) return TrigPoly(dim_);
  if (i < j) return c_[flat(i, j)];
  return -c_[flat(j, i)];
}

void TwoForm::set(int i, int j, TrigPoly value) {
  if (i < 0 || j >= dim_ || i >= j)
    throw AxisError("two-form assignment requires 0 <= i < j < dim");
  if (value.dim() != dim_) throw DimError("component dimension mismatch");
  c_[flat(i, j)] = std::move(value);
}

TwoForm& TwoForm::operator+=(const TwoForm& o) {
  if (dim_ != o.dim_) throw DimError("two-form dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

TwoForm& TwoForm::operator-=(const TwoForm& o) {
  if (dim_ != o.dim_) throw DimError("two-form dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

TwoForm& TwoForm::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
TwoForm operator*(TwoForm a, double s) { return a *= s; }

std::vector<TrigPoly> operator+(const std::vector<TrigPoly>& a,
                                const std::vector<TrigPoly>& b) {
  require_same(a, b);
  std::vector<TrigPoly> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

std::vector<TrigPoly> operator-(const std::vector<TrigPoly>& a,
                                const std::vector<TrigPoly>& b) {
  require_same(a, b);
  std::vector<TrigPoly> r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

std::vector<TrigPoly> operator*(const std::vector<TrigPoly>& a, double s) {
  std::vector<TrigPoly> r = a;
  for (auto& c : r) c *= s;
  return r;
}

OneForm d(const TrigPoly& f) {
  OneForm theta;
  theta.reserve(f.dim());
  for (int i = 0; i < f.dim(); ++i) theta.push_back(tp_diff(f, i));
  return theta;
}

TwoForm d(const OneForm& theta) {
  const int dim = require_dim(theta);
  TwoForm omega(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      omega.set(i, j, tp_diff(theta[j], i) - tp_diff(theta[i], j));
  return omega;
}

TrigPoly interior(const VectorField& x, const OneForm& theta) {
  require_same(x, theta);
  TrigPoly s(x.front().dim());
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * theta[i];
  return s;
}

OneForm interior(const VectorField& x, const TwoForm& omega) {
  const int dim = require_dim(x);
  if (dim != omega.dim()) throw DimError("contraction dimension mismatch");
  OneForm r;
  r.reserve(dim);
  for (int j = 0; j < dim; ++j) {
    TrigPoly s(dim);
    for (int i = 0; i < dim; ++i) s += x[i] * omega.comp(i, j);
    r.push_back(std::move(s));
  }
  return r;
}

OneForm lie(const VectorField& x, const OneForm& theta) {
  return interior(x, d(theta)) + d(interior(x, theta));
}

VectorField commutator(const VectorField& x, const VectorField& y) {
  require_same(x, y);
  const int dim = x.front().dim();
  VectorField r;
  r.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    TrigPoly s(dim);
    for (int j = 0; j < dim; ++j)
      s += x[j] * tp_diff(y[i], j) - y[j] * tp_diff(x[i], j);
    r.push_back(std::move(s));
  }
  return r;
}

OneForm constant_one_form(std::span<const double> c) {
  const int dim = static_cast<int>(c.size());
  OneForm theta;
  theta.reserve(c.size());
  for (double v : c) theta.push_back(TrigPoly::constant(dim, v));
  return theta;
}

std::vector<double> zero_modes(const std::vector<TrigPoly>& comps) {
  require_dim(comps);
  std::vector<double> m;
  m.reserve(comps.size());
  for (const auto& c : comps) m.push_back(c.mean());
  return m;
}

double sup_bound(const std::vector<TrigPoly>& comps) {
  double b = 0.0;
  for (const auto& c : comps) b = std::max(b, c.l1());
  return b;
}

double sup_bound(const TwoForm& omega) { return sup_bound(omega.upper()); }

}  // namespace torusflux::spectral
