// SPDX-License-Identifier: Apache-2.0
#include "torusflux/spectral/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <mutex>
#include <vector>

namespace torusflux::spectral {

namespace {

// FFTW's planner is not reentrant; plan creation and destruction are
// serialized. Execution of distinct plans is safe concurrently.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t checked_grid_size(int dim, int N) {
  if (dim < 1 || dim > kMaxDim)
    throw DimError("dimension must be in [1, 8], got " + std::to_string(dim));
  if (N < 1) throw GridError("grid resolution must be positive");
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) {
    total *= static_cast<std::size_t>(N);
    if (total > (std::size_t{1} << 26))
      throw GridError("grid of " + std::to_string(N) + "^" +
                      std::to_string(dim) + " points exceeds the size guard");
  }
  return total;
}

class PlanGuard {
 public:
  PlanGuard(int dim, int N, std::complex<double>* buf, int sign) {
    std::array<int, kMaxDim> n{};
    n.fill(N);
    auto* raw = reinterpret_cast<fftw_complex*>(buf);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft(dim, n.data(), raw, raw, sign, FFTW_ESTIMATE);
    if (!plan_) throw NumericalError("FFT planning failed");
  }
  ~PlanGuard() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  PlanGuard(const PlanGuard&) = delete;
  PlanGuard& operator=(const PlanGuard&) = delete;
  void execute() { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

std::size_t bin_of(FreqKey key, int dim, int N) {
  std::size_t idx = 0;
  for (int a = 0; a < dim; ++a) {
    const int k = freq_component(key, a);
    const int m = ((k % N) + N) % N;
    idx = idx * static_cast<std::size_t>(N) + static_cast<std::size_t>(m);
  }
  return idx;
}

}  // namespace

std::vector<double> to_grid(const TrigPoly& f, int N) {
  const int dim = f.dim();
  const std::size_t total = checked_grid_size(dim, N);
  std::vector<double> out(total);

  if (N >= 2 * f.max_band() + 1) {
    // Alias-free placement: distinct frequencies land in distinct bins, and
    // the unnormalized inverse DFT reproduces f on the lattice exactly.
    std::vector<std::complex<double>> buf(total);
    PlanGuard plan(dim, N, buf.data(), FFTW_BACKWARD);
    for (const auto& [key, c] : f.terms()) buf[bin_of(key, dim, N)] += c;
    plan.execute();
    for (std::size_t i = 0; i < total; ++i) out[i] = buf[i].real();
    return out;
  }

  // Resolution below the band: evaluate pointwise instead of folding
  // frequencies onto each other.
  std::array<double, kMaxDim> x{};
  std::array<int, kMaxDim> j{};
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    for (int a = dim - 1; a >= 0; --a) {
      j[a] = static_cast<int>(rem % static_cast<std::size_t>(N));
      rem /= static_cast<std::size_t>(N);
    }
    for (int a = 0; a < dim; ++a) x[a] = static_cast<double>(j[a]) / N;
    out[i] = f.eval(std::span<const double>(x.data(), dim));
  }
  return out;
}

CoeffResult to_coeffs(const std::vector<double>& samples, int dim, int N,
                      int bandwidth) {
  const std::size_t total = checked_grid_size(dim, N);
  if (samples.size() != total)
    throw GridError("sample count " + std::to_string(samples.size()) +
                    " does not match grid " + std::to_string(N) + "^" +
                    std::to_string(dim));
  if (bandwidth < 0) throw BandwidthError("negative bandwidth");
  if (bandwidth > kMaxFreqComponent)
    throw BandwidthError("bandwidth " + std::to_string(bandwidth) +
                         " exceeds the representable range");
  if (N < 2 * bandwidth + 2)
    throw GridError("grid resolution " + std::to_string(N) +
                    " too coarse for bandwidth " + std::to_string(bandwidth) +
                    " (need N >= 2B + 2)");

  std::vector<std::complex<double>> buf(total);
  PlanGuard plan(dim, N, buf.data(), FFTW_FORWARD);
  for (std::size_t i = 0; i < total; ++i) buf[i] = samples[i];
  plan.execute();
  const double scale = 1.0 / static_cast<double>(total);
  for (auto& v : buf) v *= scale;

  // Walk the band, conjugate-averaging each +-k bin pair so the result is
  // exactly real-symmetric even though the numerical DFT of real data is
  // only approximately Hermitian.
  std::vector<TrigPoly::Term> terms;
  std::vector<char> claimed(total, 0);
  std::array<int, kMaxDim> k{};
  k.fill(-bandwidth);
  const double zero_re = buf[0].real();
  claimed[0] = 1;
  if (zero_re != 0.0)
    terms.emplace_back(freq_zero(), std::complex<double>(zero_re, 0.0));
  bool done = dim == 0;
  while (!done) {
    const std::span<const int> ks(k.data(), dim);
    const FreqKey key = freq_pack(ks);
    if (!freq_is_zero(key) && freq_canonical(key, dim)) {
      const std::size_t bp = bin_of(key, dim, N);
      const std::size_t bm = bin_of(freq_negate(key, dim), dim, N);
      claimed[bp] = 1;
      claimed[bm] = 1;
      const std::complex<double> c = 0.5 * (buf[bp] + std::conj(buf[bm]));
      if (c != std::complex<double>(0.0, 0.0)) {
        terms.emplace_back(key, c);
        terms.emplace_back(freq_negate(key, dim), std::conj(c));
      }
    }
    int a = dim - 1;
    for (; a >= 0; --a) {
      if (k[a] < bandwidth) {
        ++k[a];
        break;
      }
      k[a] = -bandwidth;
    }
    done = a < 0;
  }
  std::sort(terms.begin(), terms.end(),
            [](const TrigPoly::Term& x, const TrigPoly::Term& y) {
              return x.first < y.first;
            });

  double outside_sq = 0.0;
  for (std::size_t i = 0; i < total; ++i)
    if (!claimed[i]) outside_sq += std::norm(buf[i]);

  CoeffResult r{TrigPoly::adopt(dim, bandwidth, std::move(terms)),
                std::sqrt(outside_sq)};
  return r;
}

}  // namespace torusflux::spectral
