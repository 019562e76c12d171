// SPDX-License-Identifier: Apache-2.0
#include "torusflux/spectral/poisson.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace torusflux::spectral {

struct PoissonTensor::Memo {
  std::mutex mutex;
  std::map<int, double> residual_by_band;
};

PoissonTensor::PoissonTensor(int dim)
    : dim_(dim), memo_(std::make_shared<Memo>()) {
  if (dim < 1 || dim > kMaxDim)
    throw DimError("dimension must be in [1, 8], got " + std::to_string(dim));
  c_.assign(static_cast<std::size_t>(dim) * (dim - 1) / 2, TrigPoly(dim));
}

std::size_t PoissonTensor::flat(int i, int j) const {
  const std::size_t row =
      static_cast<std::size_t>(i) * (2 * dim_ - i - 1) / 2;
  return row + static_cast<std::size_t>(j - i - 1);
}

PoissonTensor PoissonTensor::zero(int dim) { return PoissonTensor(dim); }

PoissonTensor PoissonTensor::constant(const Eigen::MatrixXd& p) {
  if (p.rows() != p.cols()) throw DimError("tensor matrix must be square");
  const int dim = static_cast<int>(p.rows());
  PoissonTensor t(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (p(i, j) != -p(j, i))
        throw DimError("tensor matrix must be exactly antisymmetric");
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      t.c_[t.flat(i, j)] = TrigPoly::constant(dim, p(i, j));
  return t;
}

PoissonTensor PoissonTensor::from_upper(int dim, std::vector<TrigPoly> upper) {
  PoissonTensor t(dim);
  if (upper.size() != t.c_.size())
    throw DimError("expected " + std::to_string(t.c_.size()) +
                   " upper-triangle components, got " +
                   std::to_string(upper.size()));
  for (const auto& c : upper) {
    if (c.dim() != dim) throw DimError("component dimension mismatch");
    if (c.max_band() > 0) t.constant_ = false;
  }
  t.c_ = std::move(upper);
  return t;
}

int PoissonTensor::max_band() const {
  int b = 0;
  for (const auto& c : c_) b = std::max(b, c.max_band());
  return b;
}

TrigPoly PoissonTensor::comp(int i, int j) const {
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
    throw AxisError("tensor index out of range");
  if (i == j) return TrigPoly(dim_);
  if (i < j) return c_[flat(i, j)];
  return -c_[flat(j, i)];
}

Eigen::MatrixXd PoissonTensor::constant_part() const {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      const double m = c_[flat(i, j)].mean();
      p(i, j) = m;
      p(j, i) = -m;
    }
  return p;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// max_j || d_j f ||_l1 — the derivative bound used by the triple pruning.
double deriv_bound(const TrigPoly& f) {
  std::array<double, kMaxDim> per_axis{};
  for (const auto& [key, c] : f.terms()) {
    const double a = std::abs(c);
    for (int j = 0; j < f.dim(); ++j)
      per_axis[j] += kTwoPi * std::abs(freq_component(key, j)) * a;
  }
  double m = 0.0;
  for (int j = 0; j < f.dim(); ++j) m = std::max(m, per_axis[j]);
  return m;
}

}  // namespace

double PoissonTensor::jacobi_residual(int test_band) const {
  if (test_band < 0) throw BandwidthError("negative test band");
  // Constant coefficients: every term of the cyclic defect carries a
  // derivative of the tensor, so the identity holds for any antisymmetric
  // matrix and the residual is 0 by inspection, not by summation.
  if (constant_) return 0.0;
  const int band = test_band == 0 ? max_band() + 1 : test_band;

  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    const auto it = memo_->residual_by_band.find(band);
    if (it != memo_->residual_by_band.end()) return it->second;
  }

  // Real basis: cos and sin of each canonical frequency.
  std::vector<TrigPoly> basis;
  std::vector<double> dbound;
  for (const auto& k : canonical_freqs(dim_, band)) {
    const std::span<const int> ks(k.data(), dim_);
    basis.push_back(TrigPoly::harmonic_cos(dim_, ks, 1.0));
    basis.push_back(TrigPoly::harmonic_sin(dim_, ks, 1.0));
    int linf1 = 0;
    for (int i = 0; i < dim_; ++i) linf1 = std::max(linf1, std::abs(k[i]));
    dbound.push_back(kTwoPi * linf1);
    dbound.push_back(kTwoPi * linf1);
  }
  const std::size_t m = basis.size();

  double pi_l1 = 0.0;
  for (const auto& c : c_) pi_l1 += 2.0 * c.l1();

  // Cache all pair brackets C[p][q] = {e_p, e_q}, p < q, with their own
  // derivative bounds for the triple pruning below.
  std::vector<std::vector<TrigPoly>> pair_bracket(m);
  std::vector<std::vector<double>> pair_dbound(m);
  for (std::size_t p = 0; p < m; ++p) {
    pair_bracket[p].reserve(m - p - 1);
    pair_dbound[p].reserve(m - p - 1);
    for (std::size_t q = p + 1; q < m; ++q) {
      TrigPoly b = poisson_bracket(*this, basis[p], basis[q]);
      pair_dbound[p].push_back(deriv_bound(b));
      pair_bracket[p].push_back(std::move(b));
    }
  }
  const auto cached = [&](std::size_t p, std::size_t q) -> const TrigPoly& {
    return pair_bracket[p][q - p - 1];
  };
  const auto cached_d = [&](std::size_t p, std::size_t q) {
    return pair_dbound[p][q - p - 1];
  };

  // The residual is a max, so triples whose l1 upper bound cannot exceed
  // the current max are skipped exactly.
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        const double bound = pi_l1 * (cached_d(i, j) * dbound[k] +
                                      cached_d(j, k) * dbound[i] +
                                      cached_d(i, k) * dbound[j]);
        if (bound <= best) continue;
        TrigPoly defect = poisson_bracket(*this, cached(i, j), basis[k]);
        defect += poisson_bracket(*this, cached(j, k), basis[i]);
        defect -= poisson_bracket(*this, cached(i, k), basis[j]);
        best = std::max(best, defect.l1());
      }
    }
  }

  std::lock_guard<std::mutex> lock(memo_->mutex);
  memo_->residual_by_band.emplace(band, best);
  return best;
}

void PoissonTensor::require_poisson(double tol) const {
  const double r = jacobi_residual();
  if (r > tol)
    throw GateError("tensor fails the Jacobi gate: residual " +
                        std::to_string(r) + " exceeds " + std::to_string(tol),
                    r);
}

VectorField sharp(const PoissonTensor& pi, const OneForm& theta) {
  if (static_cast<int>(theta.size()) != pi.dim())
    throw DimError("one-form dimension does not match tensor");
  VectorField x;
  x.reserve(theta.size());
  for (int i = 0; i < pi.dim(); ++i) {
    TrigPoly s(pi.dim());
    for (int j = 0; j < pi.dim(); ++j) {
      if (i == j) continue;
      s += pi.comp(i, j) * theta[j];
    }
    x.push_back(std::move(s));
  }
  return x;
}

TrigPoly pairing(const PoissonTensor& pi, const OneForm& omega,
                 const OneForm& theta) {
  return interior(sharp(pi, omega), theta);
}

TrigPoly poisson_bracket(const PoissonTensor& pi, const TrigPoly& f,
                         const TrigPoly& g) {
  return pairing(pi, d(f), d(g));
}

}  // namespace torusflux::spectral
