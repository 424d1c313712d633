#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fnd/corpus/records.hpp"
#include "fnd/kernels/pairs.hpp"

namespace fnd::echograph {

enum class NodeRole { kDataset, kExternal };

/// Retweet evidence of one dataset user.
struct RetweetSource {
  std::string user_id;
  std::vector<corpus::Retweet> retweets;
};

// Undirected, unweighted, simple graph. Dataset users come first (sorted by
// id), then external users (sorted by id).
class SocialGraph {
 public:
  SocialGraph() = default;
  /// Edges are deduplicated; self-loops are dropped.
  SocialGraph(std::vector<std::string> ids, std::vector<NodeRole> roles,
              std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return csr_.targets.size() / 2; }
  const std::string& id(std::size_t v) const { return ids_.at(v); }
  NodeRole role(std::size_t v) const { return roles_.at(v); }
  std::optional<std::size_t> find(std::string_view id) const;
  std::span<const std::size_t> neighbors(std::size_t v) const { return csr_.neighbors(v); }
  bool has_edge(std::size_t a, std::size_t b) const;
  const kernels::CsrGraph& csr() const { return csr_; }

  /// "idA<TAB>idB" per edge with idA's node index below idB's.
  std::string edge_list_tsv() const;

 private:
  std::vector<std::string> ids_;
  std::vector<NodeRole> roles_;
  std::unordered_map<std::string, std::size_t> index_;
  kernels::CsrGraph csr_;
};

/// Edge between two dataset users when either retweets the other. A
/// non-dataset user retweeted at least `external_threshold` times in total by
/// dataset users joins as an external node linked to each retweeter.
SocialGraph build_graph(std::span<const RetweetSource> users, std::size_t external_threshold = 20);

inline constexpr int kUnreached = -1;

/// Hop distances from `source`, kUnreached beyond max_distance.
std::vector<int> bfs_distances(const SocialGraph& graph, std::size_t source, int max_distance = 7);

/// Same, keyed by node id and listing reached nodes only. Throws
/// std::invalid_argument for an unknown source id.
std::map<std::string, int> bfs_distances(const SocialGraph& graph, std::string_view source,
                                         int max_distance = 7);

}  // namespace fnd::echograph
