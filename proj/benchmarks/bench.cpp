// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "torusflux/flows/advect.hpp"
#include "torusflux/flows/isotopy.hpp"
#include "torusflux/groupoid/flux.hpp"
#include "torusflux/groupoid/model.hpp"
#include "torusflux/spectral/grid.hpp"
#include "torusflux/spectral/poisson.hpp"
#include "torusflux/spectral/trigpoly.hpp"

using namespace torusflux;
using namespace torusflux::spectral;

namespace {

TrigPoly random_poly(int band, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TrigPoly f = TrigPoly::constant(2, 0.0);
  for (int kx = -band; kx <= band; ++kx)
    for (int ky = 0; ky <= band; ++ky) {
      if (ky == 0 && kx <= 0) continue;
      const std::vector<int> k{kx, ky};
      f += TrigPoly::harmonic_cos(2, k, u(rng) / (1 + kx * kx + ky * ky));
      f += TrigPoly::harmonic_sin(2, k, u(rng) / (1 + kx * kx + ky * ky));
    }
  return f;
}

void BM_product(benchmark::State& state) {
  const int band = static_cast<int>(state.range(0));
  const TrigPoly a = random_poly(band, 1);
  const TrigPoly b = random_poly(band, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b, 2 * band + 1));
}
BENCHMARK(BM_product)->Arg(4)->Arg(8)->Arg(16);

void BM_grid_roundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const TrigPoly f = random_poly(8, 3);
  for (auto _ : state) {
    const auto g = to_grid(f, n);
    benchmark::DoNotOptimize(to_coeffs(g, 2, n, 8).poly);
  }
}
BENCHMARK(BM_grid_roundtrip)->Arg(64)->Arg(128)->Arg(256);

void BM_advect(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  Eigen::MatrixXd p(2, 2);
  p << 0, 1, -1, 0;
  const PoissonTensor pi2 = PoissonTensor::constant(p);
  const std::vector<int> k{1, 1};
  const VectorField x = sharp(pi2, d(TrigPoly::harmonic_sin(2, k, 0.1)));
  const auto sampler = [&](double) { return x; };
  for (auto _ : state)
    benchmark::DoNotOptimize(flows::advect_map(sampler, 2, 0.0, 1.0, steps, 64));
}
BENCHMARK(BM_advect)->Arg(16)->Arg(64);

void BM_flux_shear(benchmark::State& state) {
  const auto model = groupoid::GroupoidModel::standard_torus(2);
  const std::vector<int> k2{0, 1};
  const flows::ShearIsotopy iso(
      0, TrigPoly::harmonic_sin(2, k2, 0.1) + TrigPoly::constant(2, 0.05));
  groupoid::FluxOptions opts;
  opts.steps = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(groupoid::flux(model, iso, opts).value);
}
BENCHMARK(BM_flux_shear)->Arg(64)->Arg(200);

void BM_flux_sampled(benchmark::State& state) {
  const auto model = groupoid::GroupoidModel::standard_torus(2);
  const std::vector<int> k2{0, 1};
  const flows::ShearIsotopy iso(
      0, TrigPoly::harmonic_sin(2, k2, 0.1) + TrigPoly::constant(2, 0.05));
  const int steps = static_cast<int>(state.range(0));
  const flows::SampledIsotopy sampled = flows::sample_isotopy(iso, steps);
  groupoid::FluxOptions opts;
  opts.steps = steps;
  for (auto _ : state)
    benchmark::DoNotOptimize(groupoid::flux(model, sampled, opts).value);
}
BENCHMARK(BM_flux_sampled)->Arg(64)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
