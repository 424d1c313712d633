#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "fnd/kernels/conv.hpp"
#include "fnd/kernels/pairs.hpp"
#include "fnd/util/rng.hpp"

using namespace fnd;
using namespace fnd::kernels;

TEST_CASE("width-1 filter pools the larger dot product") {
  const double r0[] = {2, 5};
  const double r1[] = {3, 1};
  const DocumentRows doc{{r0, r1}, 2};
  const std::vector<double> w = {1, 0};
  const std::vector<FilterRef> filters = {{1, w, 0.0}};
  const PoolResult p = conv_relu_pool(doc, filters);
  CHECK(window_pre_activation(doc, filters[0], 0) == 2.0);
  CHECK(window_pre_activation(doc, filters[0], 1) == 3.0);
  CHECK(p.value[0] == 3.0);
  CHECK(p.position[0] == 1);
}

TEST_CASE("negative pre-activations pool to zero") {
  const double r0[] = {1, 1};
  const DocumentRows doc{{r0, r0}, 2};
  const std::vector<double> w = {-1, -1};
  const std::vector<FilterRef> filters = {{1, w, -0.5}};
  const PoolResult p = conv_relu_pool(doc, filters);
  CHECK(p.value[0] == 0.0);
}

TEST_CASE("short documents are zero padded to the filter width") {
  const double r0[] = {1, 2};
  const DocumentRows doc{{r0}, 2};
  CHECK(window_count(1, 3) == 1);
  CHECK(window_count(5, 3) == 3);
  const std::vector<double> w = {1, 1, 5, 5, 5, 5};
  const std::vector<FilterRef> filters = {{3, w, 0.5}};
  const PoolResult p = conv_relu_pool(doc, filters);
  CHECK(p.value[0] == doctest::Approx(3.5));
  CHECK(p.position[0] == 0);
}

TEST_CASE("ties go to the first window") {
  const double r0[] = {1};
  const DocumentRows doc{{r0, r0, r0}, 1};
  const std::vector<double> w = {1};
  const std::vector<FilterRef> filters = {{1, w, 0.0}};
  CHECK(conv_relu_pool(doc, filters).position[0] == 0);
}

namespace {

struct RandomConv {
  std::vector<double> table;
  std::vector<double> weights;
  std::vector<FilterRef> filters;
  DocumentRows doc;
};

RandomConv random_conv(std::uint64_t seed, std::size_t n_filters, std::size_t len) {
  constexpr std::size_t dim = 7;
  Rng rng(seed);
  RandomConv c;
  c.table.resize(20 * dim);
  for (double& v : c.table) v = rng.uniform(-1, 1);
  std::vector<std::size_t> offsets;
  for (std::size_t f = 0; f < n_filters; ++f) {
    offsets.push_back(c.weights.size());
    c.weights.resize(c.weights.size() + (1 + f % 3) * dim);
  }
  for (double& v : c.weights) v = rng.uniform(-1, 1);
  for (std::size_t f = 0; f < n_filters; ++f) {
    const std::size_t w = 1 + f % 3;
    c.filters.push_back({w, std::span<const double>(c.weights.data() + offsets[f], w * dim), rng.uniform(-0.2, 0.2)});
  }
  c.doc.dim = dim;
  for (std::size_t t = 0; t < len; ++t) {
    const std::size_t id = rng.index(20);
    c.doc.rows.push_back(id == 0 ? nullptr : c.table.data() + id * dim);
  }
  return c;
}

}  // namespace

TEST_CASE("parallel conv equals the serial reference bit for bit") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RandomConv c = random_conv(seed, 1 + seed % 12, 1 + seed % 17);
    const PoolResult a = conv_relu_pool(c.doc, c.filters);
    const PoolResult b = serial::conv_relu_pool(c.doc, c.filters);
    CHECK(a.value == b.value);
    CHECK(a.position == b.position);
    CHECK(a.pre_activation == b.pre_activation);
    for (double v : a.value) CHECK(v >= 0.0);
  }
}

TEST_CASE("conv output is permutation covariant in filters") {
  RandomConv c = random_conv(99, 6, 9);
  const PoolResult base = conv_relu_pool(c.doc, c.filters);
  std::vector<FilterRef> reversed(c.filters.rbegin(), c.filters.rend());
  const PoolResult rev = conv_relu_pool(c.doc, reversed);
  for (std::size_t f = 0; f < 6; ++f) CHECK(rev.value[5 - f] == base.value[f]);
}

namespace {

struct RandomGraph {
  CsrGraph graph;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::uint8_t> eligible;
  std::vector<double> vectors;
};

RandomGraph random_graph(std::uint64_t seed, std::size_t n, std::size_t m, std::size_t dim) {
  Rng rng(seed);
  RandomGraph g;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e = 0; e < m; ++e) {
    const std::size_t a = rng.index(n), b = rng.index(n);
    if (a == b) continue;
    g.edges.emplace_back(a, b);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  g.graph.offsets.push_back(0);
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    g.graph.targets.insert(g.graph.targets.end(), list.begin(), list.end());
    g.graph.offsets.push_back(g.graph.targets.size());
  }
  for (std::size_t v = 0; v < n; ++v) g.eligible.push_back(rng.bernoulli(0.8) ? 1 : 0);
  g.vectors.resize(n * dim);
  for (std::size_t v = 0; v < n; ++v) {
    double norm = 0;
    for (std::size_t k = 0; k < dim; ++k) {
      g.vectors[v * dim + k] = rng.uniform();
      norm += g.vectors[v * dim + k] * g.vectors[v * dim + k];
    }
    for (std::size_t k = 0; k < dim; ++k) g.vectors[v * dim + k] /= std::sqrt(norm);
  }
  return g;
}

}  // namespace

TEST_CASE("pair kernels match Floyd-Warshall counts and the serial reference") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 20 + seed * 4;
    const RandomGraph g = random_graph(seed, n, n + seed * 3, 4);
    const PairQuery q{&g.graph, g.eligible, g.vectors, 4, 5};
    const auto fw = testing::floyd_warshall(n, g.edges);
    std::vector<std::size_t> expected(6, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (g.eligible[a] && g.eligible[b] && fw[a][b] >= 1 && fw[a][b] <= 5) ++expected[fw[a][b]];
    CHECK(count_pairs(q) == expected);
    CHECK(serial::count_pairs(q) == expected);

    const std::vector<double> keep = {1, 1, 0.5, 1, 0.3, 1};
    CHECK(sample_similarities(q, keep, seed) == serial::sample_similarities(q, keep, seed));
    const auto all = sample_similarities(q, std::vector<double>(6, 1.0), seed);
    for (std::size_t k = 1; k <= 5; ++k) CHECK(all[k].size() == expected[k]);
  }
}

TEST_CASE("bfs_levels stops at the depth limit") {
  CsrGraph path;
  path.offsets = {0, 1, 3, 5, 6};
  path.targets = {1, 0, 2, 1, 3, 2};
  std::vector<int> dist;
  std::vector<std::size_t> buffer;
  bfs_levels(path, 0, 2, dist, buffer);
  CHECK(dist == std::vector<int>{0, 1, 2, -1});
}
