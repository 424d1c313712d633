#pragma once

// Distance-bucketed pair similarity over an unweighted graph. Every eligible
// node runs a depth-limited BFS; pairs (s, t) with s < t, both eligible, are
// bucketed by hop distance. The OpenMP version parallelizes over sources and
// concatenates per-source buffers in source order, so it reproduces the
// serial:: reference exactly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fnd::kernels {

struct CsrGraph {
  std::vector<std::size_t> offsets;  // size n+1
  std::vector<std::size_t> targets;

  std::size_t node_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::span<const std::size_t> neighbors(std::size_t v) const {
    return {targets.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }
};

struct PairQuery {
  const CsrGraph* graph = nullptr;
  std::span<const std::uint8_t> eligible;  // pair endpoints
  std::span<const double> unit_vectors;    // n * dim, L2-normalized rows
  std::size_t dim = 0;
  int max_distance = 7;
};

/// counts[k] = number of eligible pairs at exact distance k (index 0 unused).
std::vector<std::size_t> count_pairs(const PairQuery& query);

/// Cosine similarities per distance. A pair at distance k is kept when
/// keyed_uniform(seed, s, t) < keep_probability[k].
std::vector<std::vector<double>> sample_similarities(const PairQuery& query,
                                                     std::span<const double> keep_probability,
                                                     std::uint64_t seed);

/// Depth-limited BFS; -1 marks unreached or beyond max_distance. A `dist`
/// of the right size must hold -1 everywhere (callers reset only the nodes
/// listed in the buffer); any other size is reallocated.
void bfs_levels(const CsrGraph& graph, std::size_t source, int max_distance,
                std::vector<int>& dist, std::vector<std::size_t>& frontier_buffer);

namespace serial {
std::vector<std::size_t> count_pairs(const PairQuery& query);
std::vector<std::vector<double>> sample_similarities(const PairQuery& query,
                                                     std::span<const double> keep_probability,
                                                     std::uint64_t seed);
}  // namespace serial

}  // namespace fnd::kernels
