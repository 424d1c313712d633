// Serial reference vs OpenMP kernels on paper-sized inputs.
#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fnd/kernels/conv.hpp"
#include "fnd/kernels/pairs.hpp"
#include "fnd/util/rng.hpp"

namespace {

using namespace fnd;

struct ConvInput {
  std::vector<double> table;
  std::vector<double> weights;
  std::vector<kernels::FilterRef> filters;
  kernels::DocumentRows doc;
};

// d filters round-robin over widths 1..3, a 1000-token body, GloVe width.
ConvInput make_conv(std::size_t filters, std::size_t tokens) {
  constexpr std::size_t dim = 200;
  constexpr std::size_t vocab = 5000;
  Rng rng(7);
  ConvInput in;
  in.table.resize(vocab * dim);
  for (double& v : in.table) v = rng.uniform(-0.05, 0.05);
  std::vector<std::size_t> offsets;
  for (std::size_t f = 0; f < filters; ++f) {
    offsets.push_back(in.weights.size());
    in.weights.resize(in.weights.size() + (1 + f % 3) * dim);
  }
  for (double& v : in.weights) v = rng.uniform(-0.1, 0.1);
  for (std::size_t f = 0; f < filters; ++f) {
    const std::size_t w = 1 + f % 3;
    in.filters.push_back({w, std::span<const double>(in.weights.data() + offsets[f], w * dim), 0.0});
  }
  in.doc.dim = dim;
  for (std::size_t t = 0; t < tokens; ++t) in.doc.rows.push_back(in.table.data() + rng.index(vocab) * dim);
  return in;
}

void BM_ConvSerial(benchmark::State& state) {
  const ConvInput in = make_conv(static_cast<std::size_t>(state.range(0)), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::conv_relu_pool(in.doc, in.filters));
}

void BM_ConvParallel(benchmark::State& state) {
  const ConvInput in = make_conv(static_cast<std::size_t>(state.range(0)), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::conv_relu_pool(in.doc, in.filters));
}

struct PairInput {
  kernels::CsrGraph graph;
  std::vector<std::uint8_t> eligible;
  std::vector<double> vectors;
  kernels::PairQuery query;
};

// Sparse random graph with a ring backbone so most nodes are connected.
PairInput make_pairs(std::size_t n) {
  constexpr std::size_t dim = 16;
  Rng rng(11);
  std::vector<std::vector<std::size_t>> adj(n);
  auto link = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (std::size_t v = 0; v < n; ++v) link(v, (v + 1) % n);
  for (std::size_t e = 0; e < n; ++e) link(rng.index(n), rng.index(n));
  PairInput in;
  in.graph.offsets.push_back(0);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    in.graph.targets.insert(in.graph.targets.end(), list.begin(), list.end());
    in.graph.offsets.push_back(in.graph.targets.size());
  }
  in.eligible.assign(n, 1);
  in.vectors.resize(n * dim);
  for (std::size_t v = 0; v < n; ++v) {
    double norm = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double x = rng.uniform();
      in.vectors[v * dim + k] = x;
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < dim; ++k) in.vectors[v * dim + k] /= norm;
  }
  in.query = {&in.graph, in.eligible, in.vectors, dim, 7};
  return in;
}

void BM_PairsSerial(benchmark::State& state) {
  const PairInput in = make_pairs(static_cast<std::size_t>(state.range(0)));
  const std::vector<double> keep(8, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::sample_similarities(in.query, keep, 1));
}

void BM_PairsParallel(benchmark::State& state) {
  const PairInput in = make_pairs(static_cast<std::size_t>(state.range(0)));
  const std::vector<double> keep(8, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sample_similarities(in.query, keep, 1));
}

}  // namespace

BENCHMARK(BM_ConvSerial)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ConvParallel)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PairsSerial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairsParallel)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
