#include "fnd/echograph/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fnd::echograph {

SocialGraph::SocialGraph(std::vector<std::string> ids, std::vector<NodeRole> roles,
                         std::vector<std::pair<std::size_t, std::size_t>> edges)
    : ids_(std::move(ids)), roles_(std::move(roles)) {
  if (ids_.size() != roles_.size()) throw std::invalid_argument("ids/roles size mismatch");
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw std::invalid_argument("duplicate node id " + ids_[i]);
    }
  }
  const std::size_t n = ids_.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::out_of_range("edge endpoint out of range");
    if (a == b) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  csr_.offsets.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = adj[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    csr_.offsets[v + 1] = csr_.offsets[v] + list.size();
  }
  csr_.targets.reserve(csr_.offsets[n]);
  for (auto& list : adj) csr_.targets.insert(csr_.targets.end(), list.begin(), list.end());
}

std::optional<std::size_t> SocialGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SocialGraph::has_edge(std::size_t a, std::size_t b) const {
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::string SocialGraph::edge_list_tsv() const {
  std::string out;
  for (std::size_t v = 0; v < node_count(); ++v) {
    for (std::size_t w : neighbors(v)) {
      if (w > v) out += ids_[v] + "\t" + ids_[w] + "\n";
    }
  }
  return out;
}

SocialGraph build_graph(std::span<const RetweetSource> users, std::size_t external_threshold) {
  std::set<std::string> dataset;
  for (const RetweetSource& u : users) dataset.insert(u.user_id);

  std::map<std::string, std::size_t> external_totals;
  for (const RetweetSource& u : users) {
    for (const corpus::Retweet& r : u.retweets) {
      if (r.count >= 1 && !dataset.count(r.user_id)) external_totals[r.user_id] += r.count;
    }
  }

  std::vector<std::string> ids(dataset.begin(), dataset.end());
  std::vector<NodeRole> roles(ids.size(), NodeRole::kDataset);
  for (const auto& [id, total] : external_totals) {
    if (total >= external_threshold) {
      ids.push_back(id);
      roles.push_back(NodeRole::kExternal);
    }
  }
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const RetweetSource& u : users) {
    const std::size_t a = index.at(u.user_id);
    for (const corpus::Retweet& r : u.retweets) {
      if (r.count < 1) continue;
      auto it = index.find(r.user_id);
      if (it != index.end()) edges.emplace_back(a, it->second);
    }
  }
  return SocialGraph(std::move(ids), std::move(roles), std::move(edges));
}

std::vector<int> bfs_distances(const SocialGraph& graph, std::size_t source, int max_distance) {
  if (source >= graph.node_count()) throw std::invalid_argument("unknown source node");
  std::vector<int> dist(graph.node_count(), kUnreached);
  std::vector<std::size_t> queue;
  kernels::bfs_levels(graph.csr(), source, max_distance, dist, queue);
  return dist;
}

std::map<std::string, int> bfs_distances(const SocialGraph& graph, std::string_view source,
                                         int max_distance) {
  const auto src = graph.find(source);
  if (!src) throw std::invalid_argument("unknown source " + std::string(source));
  const std::vector<int> dist = bfs_distances(graph, *src, max_distance);
  std::map<std::string, int> out;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnreached) out.emplace(graph.id(v), dist[v]);
  }
  return out;
}

}  // namespace fnd::echograph
