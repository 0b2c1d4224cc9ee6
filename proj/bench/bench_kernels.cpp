// Parallel kernels against the serial reference on the shapes the networks
// actually use, plus the renderer that dominates a training step.

#include <benchmark/benchmark.h>

#include <vector>

#include "latent_bridge/kernels.hpp"
#include "latent_bridge/msssim.hpp"
#include "latent_bridge/rng.hpp"
#include "latent_bridge/toyfaces.hpp"

namespace {

using namespace lb;

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

// First identity-embedder layer on a batch of 6 images: 3 -> 8 channels, 5x5, stride 2.
kernels::ConvGeometry first_conv() { return {6, 3, 64, 64, 8, 5, 2, 2}; }

template <bool Parallel>
void conv_forward(benchmark::State& state) {
  const auto g = first_conv();
  const auto in = noise(g.in_size(), 1), w = noise(g.weight_size(), 2), b = noise(g.out_channels, 3);
  std::vector<double> out(g.out_size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::conv2d_forward(g, in, w, b, out);
    else
      kernels::reference::conv2d_forward(g, in, w, b, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void conv_backward(benchmark::State& state) {
  const auto g = first_conv();
  const auto in = noise(g.in_size(), 1), w = noise(g.weight_size(), 2), go = noise(g.out_size(), 4);
  std::vector<double> gi(g.in_size()), gw(g.weight_size()), gb(g.out_channels);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::conv2d_backward(g, in, w, go, gi, gw, gb);
    else
      kernels::reference::conv2d_backward(g, in, w, go, gi, gw, gb);
    benchmark::DoNotOptimize(gi.data());
  }
}

// Mapper hidden layer, batch 64.
template <bool Parallel>
void dense_forward(benchmark::State& state) {
  const int n = 64, in_f = 128, out_f = 128;
  const auto in = noise(n * in_f, 5), w = noise(in_f * out_f, 6), b = noise(out_f, 7);
  std::vector<double> out(n * out_f);
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::dense_forward(n, in_f, out_f, in, w, b, out);
    else
      kernels::reference::dense_forward(n, in_f, out_f, in, w, b, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void render(benchmark::State& state) {
  const auto f = toyfaces::sample_factors(9, 1).front();
  for (auto _ : state) benchmark::DoNotOptimize(toyfaces::render(f));
}

void render_jacobian(benchmark::State& state) {
  const auto f = toyfaces::sample_factors(9, 1).front().to_array();
  for (auto _ : state) benchmark::DoNotOptimize(toyfaces::render_with_jacobian(f));
}

void ms_ssim_grad(benchmark::State& state) {
  const auto a = toyfaces::render(toyfaces::sample_factors(10, 1).front());
  const auto b = toyfaces::render(toyfaces::sample_factors(11, 1).front());
  std::vector<double> g(a.count());
  for (auto _ : state) benchmark::DoNotOptimize(msssim::ms_ssim_grad(a.pixels, b.pixels, 3, a.size, g));
}

BENCHMARK(conv_forward<true>)->Name("conv_forward/parallel");
BENCHMARK(conv_forward<false>)->Name("conv_forward/reference");
BENCHMARK(conv_backward<true>)->Name("conv_backward/parallel");
BENCHMARK(conv_backward<false>)->Name("conv_backward/reference");
BENCHMARK(dense_forward<true>)->Name("dense_forward/parallel");
BENCHMARK(dense_forward<false>)->Name("dense_forward/reference");
BENCHMARK(render);
BENCHMARK(render_jacobian);
BENCHMARK(ms_ssim_grad);

}  // namespace

BENCHMARK_MAIN();
