// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "torusflux/spectral/trigpoly.hpp"

namespace torusflux::spectral {

// On the flat torus both covariant and contravariant fields are plain
// component tuples in the global chart; the free functions below carry the
// geometric meaning.
using OneForm = std::vector<TrigPoly>;
using VectorField = std::vector<TrigPoly>;

// Antisymmetric rank-2 tensor, stored as the strict upper triangle in
// row-major order: (0,1), (0,2), ..., (0,n-1), (1,2), ...
class TwoForm {
 public:
  explicit TwoForm(int dim);

  int dim() const { return dim_; }
  // Signed component: comp(i, j) == -comp(j, i); comp(i, i) == 0.
  TrigPoly comp(int i, int j) const;
  void set(int i, int j, TrigPoly value);  // requires i < j
  const std::vector<TrigPoly>& upper() const { return c_; }

  TwoForm& operator+=(const TwoForm& o);
  TwoForm& operator-=(const TwoForm& o);
  TwoForm& operator*=(double s);

 private:
  std::size_t flat(int i, int j) const;
  int dim_;
  std::vector<TrigPoly> c_;
};

TwoForm operator+(TwoForm a, const TwoForm& b);
TwoForm operator-(TwoForm a, const TwoForm& b);
TwoForm operator*(TwoForm a, double s);

std::vector<TrigPoly> operator+(const std::vector<TrigPoly>& a,
                                const std::vector<TrigPoly>& b);
std::vector<TrigPoly> operator-(const std::vector<TrigPoly>& a,
                                const std::vector<TrigPoly>& b);
std::vector<TrigPoly> operator*(const std::vector<TrigPoly>& a, double s);

OneForm d(const TrigPoly& f);
TwoForm d(const OneForm& theta);

// Contractions: X -| theta and X -| omega.
TrigPoly interior(const VectorField& x, const OneForm& theta);
OneForm interior(const VectorField& x, const TwoForm& omega);

// Lie derivative of a 1-form along X, via the homotopy identity
// L_X = X -| d + d (X -|).
OneForm lie(const VectorField& x, const OneForm& theta);

VectorField commutator(const VectorField& x, const VectorField& y);

OneForm constant_one_form(std::span<const double> c);
std::vector<double> zero_modes(const std::vector<TrigPoly>& comps);

// Coefficient-l1 bounds (dominate the sup norm component-wise).
double sup_bound(const std::vector<TrigPoly>& comps);
double sup_bound(const TwoForm& omega);

}  // namespace torusflux::spectral
