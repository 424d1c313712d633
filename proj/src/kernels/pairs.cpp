#include "fnd/kernels/pairs.hpp"


#include "fnd/util/rng.hpp"

namespace fnd::kernels {
namespace {

double dot(const PairQuery& q, std::size_t a, std::size_t b) {
  const double* x = q.unit_vectors.data() + a * q.dim;
  const double* y = q.unit_vectors.data() + b * q.dim;
  double s = 0.0;
  for (std::size_t k = 0; k < q.dim; ++k) s += x[k] * y[k];
  return s;
}

// Visits eligible targets t > source within max_distance, in BFS order.
template <class Visit>
void for_each_pair_from(const PairQuery& q, std::size_t source, std::vector<int>& dist,
                        std::vector<std::size_t>& queue, Visit&& visit) {
  bfs_levels(*q.graph, source, q.max_distance, dist, queue);
  for (std::size_t v : queue) {
    const int d = dist[v];
    if (d >= 1 && v > source && q.eligible[v]) visit(v, d);
  }
  for (std::size_t v : queue) dist[v] = -1;
}

void sample_from(const PairQuery& q, std::size_t s, std::span<const double> keep,
                 std::uint64_t seed, std::vector<int>& dist, std::vector<std::size_t>& queue,
                 std::vector<std::vector<double>>& out) {
  for_each_pair_from(q, s, dist, queue, [&](std::size_t t, int d) {
    if (keep[d] >= 1.0 || keyed_uniform(seed, s, t) < keep[d]) out[d].push_back(dot(q, s, t));
  });
}

}  // namespace

void bfs_levels(const CsrGraph& graph, std::size_t source, int max_distance,
                std::vector<int>& dist, std::vector<std::size_t>& queue) {
  if (dist.size() != graph.node_count()) dist.assign(graph.node_count(), -1);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t v = queue[head];
    if (dist[v] >= max_distance) continue;
    for (std::size_t w : graph.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
}

std::vector<std::size_t> count_pairs(const PairQuery& q) {
  const std::size_t n = q.graph->node_count();
  const auto levels = static_cast<std::size_t>(q.max_distance) + 1;
  std::vector<std::size_t> total(levels, 0);
#pragma omp parallel
  {
    std::vector<std::size_t> local(levels, 0);
    std::vector<int> dist(n, -1);
    std::vector<std::size_t> queue;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s) {
      if (!q.eligible[static_cast<std::size_t>(s)]) continue;
      for_each_pair_from(q, static_cast<std::size_t>(s), dist, queue,
                         [&](std::size_t, int d) { ++local[static_cast<std::size_t>(d)]; });
    }
#pragma omp critical
    for (std::size_t k = 0; k < levels; ++k) total[k] += local[k];
  }
  return total;
}

std::vector<std::vector<double>> sample_similarities(const PairQuery& q,
                                                     std::span<const double> keep,
                                                     std::uint64_t seed) {
  const std::size_t n = q.graph->node_count();
  const auto levels = static_cast<std::size_t>(q.max_distance) + 1;
  // Per-source buffers keep the output order independent of scheduling.
  std::vector<std::vector<std::vector<double>>> per_source(n);
#pragma omp parallel
  {
    std::vector<int> dist(n, -1);
    std::vector<std::size_t> queue;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s) {
      const auto src = static_cast<std::size_t>(s);
      if (!q.eligible[src]) continue;
      per_source[src].assign(levels, {});
      sample_from(q, src, keep, seed, dist, queue, per_source[src]);
    }
  }
  std::vector<std::vector<double>> out(levels);
  for (auto& buckets : per_source) {
    for (std::size_t k = 0; k < buckets.size(); ++k) {
      out[k].insert(out[k].end(), buckets[k].begin(), buckets[k].end());
    }
  }
  return out;
}

namespace serial {

std::vector<std::size_t> count_pairs(const PairQuery& q) {
  const std::size_t n = q.graph->node_count();
  std::vector<std::size_t> total(static_cast<std::size_t>(q.max_distance) + 1, 0);
  std::vector<int> dist(n, -1);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (!q.eligible[s]) continue;
    for_each_pair_from(q, s, dist, queue,
                       [&](std::size_t, int d) { ++total[static_cast<std::size_t>(d)]; });
  }
  return total;
}

std::vector<std::vector<double>> sample_similarities(const PairQuery& q,
                                                     std::span<const double> keep,
                                                     std::uint64_t seed) {
  const std::size_t n = q.graph->node_count();
  std::vector<std::vector<double>> out(static_cast<std::size_t>(q.max_distance) + 1);
  std::vector<int> dist(n, -1);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (q.eligible[s]) sample_from(q, s, keep, seed, dist, queue, out);
  }
  return out;
}

}  // namespace serial
}  // namespace fnd::kernels
