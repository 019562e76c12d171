// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "torusflux/common.hpp"
#include "torusflux/spectral/freq.hpp"

namespace torusflux::spectral {

/// Band-limited real function on the torus T^n = R^n/Z^n, stored as its full
/// Fourier coefficient map f(x) = sum_k c_k exp(2 pi i k.x). Both k and -k are
/// stored; the reality constraint c(-k) = conj(c(k)) is maintained exactly by
/// every operation (mirror coefficients are written as literal conjugates, and
/// the zero mode is kept exactly real).
class TrigPoly {
 public:
  using Term = std::pair<FreqKey, std::complex<double>>;

  TrigPoly() = default;
  explicit TrigPoly(int dim);  // zero function

  static TrigPoly constant(int dim, double value);
  /// amplitude * cos(2 pi k.x) resp. sin; k = 0 degenerates to the constant
  /// amplitude (cos) or zero (sin).
  static TrigPoly harmonic_cos(int dim, std::span<const int> k, double amplitude);
  static TrigPoly harmonic_sin(int dim, std::span<const int> k, double amplitude);
  /// Build from explicit (k, c) pairs; missing mirrors are filled in as exact
  /// conjugates, and an inconsistent explicit mirror is rejected.
  static TrigPoly from_terms(int dim,
                             const std::vector<std::pair<std::vector<int>, std::complex<double>>>& terms);

  int dim() const { return dim_; }
  /// Declared bound on ||k||_inf (grows through arithmetic; >= max_band()).
  int bandwidth() const { return bandwidth_; }
  /// Largest ||k||_inf actually present.
  int max_band() const;
  std::size_t term_count() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Term>& terms() const { return c_; }

  std::complex<double> coeff(std::span<const int> k) const;
  std::complex<double> coeff_key(FreqKey key) const;
  double mean() const;  // zero mode (exactly real)

  double eval(std::span<const double> x) const;

  double l1() const;  // sum |c_k| over all stored k; dominates sup|f|
  double l2() const;  // sqrt(sum |c_k|^2) = L^2(T^n) norm of f

  TrigPoly& operator+=(const TrigPoly& rhs);
  TrigPoly& operator-=(const TrigPoly& rhs);
  TrigPoly& operator*=(double s);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { a += b; return a; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { a -= b; return a; }
  friend TrigPoly operator-(TrigPoly a) { a *= -1.0; return a; }
  friend TrigPoly operator*(TrigPoly a, double s) { a *= s; return a; }
  friend TrigPoly operator*(double s, TrigPoly a) { a *= s; return a; }

  bool operator==(const TrigPoly& rhs) const {
    return dim_ == rhs.dim_ && c_ == rhs.c_;
  }

  /// Exact reality/sortedness invariant check (used by tests and debug paths).
  bool check_invariants() const;

  /// Internal: construct from a sorted, mirror-complete term vector.
  static TrigPoly adopt(int dim, int bandwidth, std::vector<Term> terms);

 private:
  int dim_ = 0;
  int bandwidth_ = 0;
  std::vector<Term> c_;  // sorted by key; no exact-zero entries
};

/// Exact convolution product. Throws BandwidthError when the result bandwidth
/// a.bandwidth()+b.bandwidth() would exceed `cap`; use mul_truncated to consent
/// to truncation.
TrigPoly mul(const TrigPoly& a, const TrigPoly& b, int cap = kBandwidthCap);
inline TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) { return mul(a, b); }

struct TruncatedProduct {
  TrigPoly poly;
  double discarded_l2;  // L^2 norm of the tail beyond the cap
};
TruncatedProduct mul_truncated(const TrigPoly& a, const TrigPoly& b, int cap);

/// Partial derivative along axis j (0-based): c_k -> 2 pi i k_j c_k.
TrigPoly tp_diff(const TrigPoly& f, int axis);

/// Integral over T^n with Lebesgue measure (the zero Fourier mode).
double tp_integrate(const TrigPoly& f);

double max_abs_coeff_diff(const TrigPoly& a, const TrigPoly& b);

/// Drop coefficients with |c| < floor (conjugate pairs together, preserving
/// exact reality); the L^2 norm of the dropped part is added to
/// *dropped_l2 when non-null. Used to keep grid reconstructions from
/// carrying thousands of roundoff-noise terms.
TrigPoly tp_chop(const TrigPoly& f, double floor,
                 double* dropped_l2 = nullptr);

/// Canonical (first nonzero component positive) frequency vectors with
/// 0 < |k|_inf <= band, in lexicographic order: one representative per
/// {k, -k} pair, enumerating the real cos/sin basis.
std::vector<std::array<int, kMaxDim>> canonical_freqs(int dim, int band);

}  // namespace torusflux::spectral
