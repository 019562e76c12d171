// SPDX-License-Identifier: Apache-2.0
#include "torusflux/spectral/trigpoly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

namespace torusflux::spectral {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_same_dim(const TrigPoly& a, const TrigPoly& b) {
  if (a.dim() != b.dim())
    throw DimError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                   std::to_string(b.dim()));
}

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim)
    throw DimError("dimension must be in [1, 8], got " + std::to_string(dim));
}

}  // namespace

TrigPoly::TrigPoly(int dim) : dim_(dim) { check_dim(dim); }

TrigPoly TrigPoly::adopt(int dim, int bandwidth, std::vector<Term> terms) {
  TrigPoly p(dim);
  p.bandwidth_ = bandwidth;
  p.c_ = std::move(terms);
  return p;
}

TrigPoly TrigPoly::constant(int dim, double value) {
  TrigPoly p(dim);
  if (value != 0.0) p.c_.emplace_back(freq_zero(), std::complex<double>(value, 0.0));
  return p;
}

TrigPoly TrigPoly::harmonic_cos(int dim, std::span<const int> k, double amplitude) {
  check_dim(dim);
  if (static_cast<int>(k.size()) != dim) throw DimError("frequency vector length != dim");
  const FreqKey key = freq_pack(k);
  if (freq_is_zero(key)) return constant(dim, amplitude);
  if (amplitude == 0.0) return TrigPoly(dim);
  std::vector<Term> terms;
  const std::complex<double> half(amplitude / 2.0, 0.0);
  const FreqKey neg = freq_negate(key, dim);
  terms.emplace_back(std::min(key, neg), half);
  terms.emplace_back(std::max(key, neg), half);
  return adopt(dim, freq_linf(key, dim), std::move(terms));
}

TrigPoly TrigPoly::harmonic_sin(int dim, std::span<const int> k, double amplitude) {
  check_dim(dim);
  if (static_cast<int>(k.size()) != dim) throw DimError("frequency vector length != dim");
  const FreqKey key = freq_pack(k);
  if (freq_is_zero(key) || amplitude == 0.0) return TrigPoly(dim);
  // sin(2 pi k.x) = -i/2 e^{2 pi i k.x} + i/2 e^{-2 pi i k.x}
  const std::complex<double> ck(0.0, -amplitude / 2.0);
  const FreqKey neg = freq_negate(key, dim);
  std::vector<Term> terms(2);
  terms[0] = {std::min(key, neg), key < neg ? ck : std::conj(ck)};
  terms[1] = {std::max(key, neg), key < neg ? std::conj(ck) : ck};
  return adopt(dim, freq_linf(key, dim), std::move(terms));
}

TrigPoly TrigPoly::from_terms(
    int dim, const std::vector<std::pair<std::vector<int>, std::complex<double>>>& terms) {
  check_dim(dim);
  std::map<FreqKey, std::complex<double>> m;
  for (const auto& [kvec, c] : terms) {
    if (static_cast<int>(kvec.size()) != dim) throw DimError("frequency vector length != dim");
    const FreqKey key = freq_pack(kvec);
    auto [it, fresh] = m.emplace(key, c);
    if (!fresh) it->second += c;
  }
  // Fill mirrors; reject inconsistent explicit ones.
  std::vector<Term> out;
  int bw = 0;
  for (const auto& [key, c] : m) {
    if (freq_is_zero(key)) {
      if (c.imag() != 0.0)
        throw GridError("zero mode of a real function must be real");
      if (c != 0.0) out.emplace_back(key, c);
      continue;
    }
    const FreqKey neg = freq_negate(key, dim);
    const auto mirror = m.find(neg);
    if (mirror != m.end()) {
      if (key > neg) continue;  // handled from the canonical-side visit
      if (mirror->second != std::conj(c))
        throw GridError("coefficient map violates reality: c(-k) != conj(c(k))");
      if (c != 0.0) {
        out.emplace_back(key, c);
        out.emplace_back(neg, std::conj(c));
      }
    } else if (c != 0.0) {
      out.emplace_back(std::min(key, neg), key < neg ? c : std::conj(c));
      out.emplace_back(std::max(key, neg), key < neg ? std::conj(c) : c);
    }
    bw = std::max(bw, freq_linf(key, dim));
  }
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  return adopt(dim, bw, std::move(out));
}

int TrigPoly::max_band() const {
  int m = 0;
  for (const auto& [key, c] : c_) m = std::max(m, freq_linf(key, dim_));
  return m;
}

std::complex<double> TrigPoly::coeff(std::span<const int> k) const {
  if (static_cast<int>(k.size()) != dim_) throw DimError("frequency vector length != dim");
  return coeff_key(freq_pack(k));
}

std::complex<double> TrigPoly::coeff_key(FreqKey key) const {
  auto it = std::lower_bound(c_.begin(), c_.end(), key,
                             [](const Term& t, FreqKey k) { return t.first < k; });
  if (it != c_.end() && it->first == key) return it->second;
  return {0.0, 0.0};
}

double TrigPoly::mean() const { return coeff_key(freq_zero()).real(); }

double TrigPoly::eval(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw DimError("point length != dim");
  // Sum over canonical keys only; each pair contributes 2 Re(c e^{i phi}),
  // so the result is exactly real.
  double s = 0.0;
  for (const auto& [key, c] : c_) {
    if (freq_is_zero(key)) {
      s += c.real();
      continue;
    }
    if (!freq_canonical(key, dim_)) continue;
    double dot = 0.0;
    for (int i = 0; i < dim_; ++i) dot += freq_component(key, i) * x[i];
    const double phi = kTwoPi * dot;
    s += 2.0 * (c.real() * std::cos(phi) - c.imag() * std::sin(phi));
  }
  return s;
}

double TrigPoly::l1() const {
  double s = 0.0;
  for (const auto& [key, c] : c_) s += std::abs(c);
  return s;
}

double TrigPoly::l2() const {
  double s = 0.0;
  for (const auto& [key, c] : c_) s += std::norm(c);
  return std::sqrt(s);
}

bool TrigPoly::check_invariants() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i - 1].first >= c_[i].first) return false;
  for (const auto& [key, c] : c_) {
    if (c == std::complex<double>(0.0, 0.0)) return false;
    if (freq_linf(key, dim_) > bandwidth_) return false;
    if (freq_is_zero(key)) {
      if (c.imag() != 0.0) return false;
      continue;
    }
    if (coeff_key(freq_negate(key, dim_)) != std::conj(c)) return false;
  }
  return true;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& rhs) {
  check_same_dim(*this, rhs);
  std::vector<Term> out;
  out.reserve(c_.size() + rhs.c_.size());
  std::size_t i = 0, j = 0;
  while (i < c_.size() || j < rhs.c_.size()) {
    if (j == rhs.c_.size() || (i < c_.size() && c_[i].first < rhs.c_[j].first)) {
      out.push_back(c_[i++]);
    } else if (i == c_.size() || rhs.c_[j].first < c_[i].first) {
      out.push_back(rhs.c_[j++]);
    } else {
      const std::complex<double> c = c_[i].second + rhs.c_[j].second;
      if (c != std::complex<double>(0.0, 0.0)) out.emplace_back(c_[i].first, c);
      ++i;
      ++j;
    }
  }
  c_ = std::move(out);
  bandwidth_ = std::max(bandwidth_, rhs.bandwidth_);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& rhs) {
  TrigPoly neg = rhs;
  neg *= -1.0;
  return *this += neg;
}

TrigPoly& TrigPoly::operator*=(double s) {
  if (s == 0.0) {
    c_.clear();
    return *this;
  }
  for (auto& [key, c] : c_) c *= s;
  // Denormal coefficients can underflow to exact zero under scaling; sweep
  // them out so the no-zero-term invariant holds.
  std::erase_if(c_, [](const Term& t) { return t.second == std::complex<double>(0.0, 0.0); });
  return *this;
}

TrigPoly mul(const TrigPoly& a, const TrigPoly& b, int cap) {
  if (a.dim() != b.dim())
    throw DimError("dimension mismatch in product");
  if (a.bandwidth() + b.bandwidth() > cap)
    throw BandwidthError("product bandwidth " +
                         std::to_string(a.bandwidth() + b.bandwidth()) +
                         " exceeds cap " + std::to_string(cap) +
                         "; use mul_truncated to consent to truncation");
  return mul_truncated(a, b, cap).poly;
}

TrigPoly tp_chop(const TrigPoly& f, double floor, double* dropped_l2) {
  std::vector<TrigPoly::Term> kept;
  kept.reserve(f.terms().size());
  double dropped_sq = 0.0;
  for (const auto& [key, c] : f.terms()) {
    if (std::abs(c) < floor) {
      dropped_sq += std::norm(c);  // each of the +-k pair passes here once
    } else {
      kept.emplace_back(key, c);
    }
  }
  if (dropped_l2) *dropped_l2 += std::sqrt(dropped_sq);
  return TrigPoly::adopt(f.dim(), f.bandwidth(), std::move(kept));
}

std::vector<std::array<int, kMaxDim>> canonical_freqs(int dim, int band) {
  check_dim(dim);
  if (band < 0 || band > kMaxFreqComponent)
    throw BandwidthError("band out of range: " + std::to_string(band));
  std::vector<std::array<int, kMaxDim>> out;
  std::array<int, kMaxDim> k{};
  for (int i = 0; i < dim; ++i) k[i] = -band;
  while (true) {
    for (int i = 0; i < dim; ++i) {
      if (k[i] > 0) {
        out.push_back(k);
        break;
      }
      if (k[i] < 0) break;
    }
    int a = dim - 1;
    for (; a >= 0; --a) {
      if (k[a] < band) {
        ++k[a];
        break;
      }
      k[a] = -band;
    }
    if (a < 0) break;
  }
  return out;
}

namespace {

// Wide frequency index for product keys that may leave the packable range.
using WideKey = std::array<int, kMaxDim>;

bool wide_canonical(const WideKey& k, int dim) {
  for (int i = 0; i < dim; ++i) {
    if (k[i] > 0) return true;
    if (k[i] < 0) return false;
  }
  return false;  // zero
}

int wide_linf(const WideKey& k, int dim) {
  int m = 0;
  for (int i = 0; i < dim; ++i) m = std::max(m, std::abs(k[i]));
  return m;
}

}  // namespace

TruncatedProduct mul_truncated(const TrigPoly& a, const TrigPoly& b, int cap) {
  if (a.dim() != b.dim())
    throw DimError("dimension mismatch in product");
  if (cap < 0) throw BandwidthError("negative bandwidth cap");
  const int dim = a.dim();
  const int eff_cap = std::min(cap, kMaxFreqComponent);
  // Accumulate canonical-half coefficients only, then mirror with literal
  // conjugates: this keeps the reality invariant exact regardless of the
  // floating-point accumulation order. The zero mode is accumulated as a
  // real number (its exact value is real). The truncated tail is assembled
  // the same way so its reported norm is the L^2 norm of the discarded
  // function, not a term-count artifact.
  std::map<WideKey, std::complex<double>> kept, tail;
  double zero_mode = 0.0;
  WideKey k{};
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      bool zero = true;
      for (int i = 0; i < dim; ++i) {
        k[i] = freq_component(ka, i) + freq_component(kb, i);
        zero = zero && k[i] == 0;
      }
      const std::complex<double> prod = ca * cb;
      if (zero) {
        zero_mode += prod.real();
        continue;
      }
      if (!wide_canonical(k, dim)) continue;
      auto& dst = wide_linf(k, dim) > eff_cap ? tail : kept;
      auto [it, fresh] = dst.emplace(k, prod);
      if (!fresh) it->second += prod;
    }
  }
  std::vector<TrigPoly::Term> out;
  out.reserve(2 * kept.size() + 1);
  if (zero_mode != 0.0)
    out.emplace_back(freq_zero(), std::complex<double>(zero_mode, 0.0));
  for (const auto& [kk, c] : kept) {
    if (c == std::complex<double>(0.0, 0.0)) continue;
    const FreqKey key = freq_pack(std::span<const int>(kk.data(), dim));
    out.emplace_back(key, c);
    out.emplace_back(freq_negate(key, dim), std::conj(c));
  }
  std::sort(out.begin(), out.end(),
            [](const TrigPoly::Term& x, const TrigPoly::Term& y) { return x.first < y.first; });
  double discarded_sq = 0.0;
  for (const auto& [kk, c] : tail) discarded_sq += 2.0 * std::norm(c);
  const int bw = std::min(a.bandwidth() + b.bandwidth(), eff_cap);
  return {TrigPoly::adopt(dim, bw, std::move(out)), std::sqrt(discarded_sq)};
}

TrigPoly tp_diff(const TrigPoly& f, int axis) {
  if (axis < 0 || axis >= f.dim())
    throw AxisError("axis " + std::to_string(axis) + " out of range for dim " +
                    std::to_string(f.dim()));
  std::vector<TrigPoly::Term> out;
  out.reserve(f.term_count());
  for (const auto& [key, c] : f.terms()) {
    const int kj = freq_component(key, axis);
    if (kj == 0) continue;
    // c * 2 pi i k_j; conjugate-symmetric inputs map to conjugate-symmetric
    // outputs exactly (products of conjugates are conjugates in IEEE).
    out.emplace_back(key, c * std::complex<double>(0.0, kTwoPi * kj));
  }
  return TrigPoly::adopt(f.dim(), f.bandwidth(), std::move(out));
}

double tp_integrate(const TrigPoly& f) { return f.mean(); }

double max_abs_coeff_diff(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly d = a - b;
  double m = 0.0;
  for (const auto& [key, c] : d.terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace torusflux::spectral
