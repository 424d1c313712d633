#include "fnd/echograph/ece.hpp"

#include <cmath>
#include <json.hpp>
#include <numeric>
#include <stdexcept>

#include "fnd/kernels/pairs.hpp"
#include "fnd/util/io.hpp"

namespace fnd::echograph {

EceCurve ece_curve(const SocialGraph& graph,
                   const std::map<std::string, std::vector<double>>& vectors,
                   const EceOptions& options) {
  const std::size_t n = graph.node_count();
  std::size_t dim = 0;
  for (const auto& [id, v] : vectors) {
    if (dim == 0) dim = v.size();
    if (v.size() != dim) throw std::invalid_argument("topic vectors differ in dimension");
  }

  std::vector<std::uint8_t> eligible(n, 0);
  std::vector<double> unit(n * std::max<std::size_t>(dim, 1), 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (graph.role(v) != NodeRole::kDataset) continue;
    auto it = vectors.find(graph.id(v));
    if (it == vectors.end()) continue;
    double norm2 = 0.0;
    for (double x : it->second) norm2 += x * x;
    if (!(norm2 > 0.0)) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t k = 0; k < dim; ++k) unit[v * dim + k] = it->second[k] * inv;
    eligible[v] = 1;
  }

  kernels::PairQuery query;
  query.graph = &graph.csr();
  query.eligible = eligible;
  query.unit_vectors = unit;
  query.dim = dim;
  query.max_distance = options.max_distance;

  const std::vector<std::size_t> counts =
      options.parallel ? kernels::count_pairs(query) : kernels::serial::count_pairs(query);
  std::vector<double> keep(counts.size(), 1.0);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > options.pair_cap) {
      keep[k] = static_cast<double>(options.pair_cap) / static_cast<double>(counts[k]);
    }
  }
  std::vector<std::vector<double>> samples =
      options.parallel ? kernels::sample_similarities(query, keep, options.seed)
                       : kernels::serial::sample_similarities(query, keep, options.seed);

  EceCurve curve;
  for (std::size_t k = 1; k < counts.size(); ++k) {
    if (counts[k] < options.min_pairs || samples[k].empty()) continue;
    DistancePoint p;
    p.distance = static_cast<int>(k);
    p.pairs = counts[k];
    p.mean_cosine = std::accumulate(samples[k].begin(), samples[k].end(), 0.0) /
                    static_cast<double>(samples[k].size());
    p.sample = std::move(samples[k]);
    curve.points.push_back(std::move(p));
  }
  if (curve.points.empty()) throw std::runtime_error("graph too sparse");
  return curve;
}

EceAssessment ece_assess(const EceCurve& curve, const EceCriteria& criteria) {
  if (curve.points.size() < 3) {
    throw std::invalid_argument("ece_assess needs at least 3 distances");
  }
  EceAssessment a;
  std::vector<double> distance;
  std::vector<double> mean;
  for (const DistancePoint& p : curve.points) {
    distance.push_back(p.distance);
    mean.push_back(p.mean_cosine);
  }
  try {
    a.spearman = stats::spearman_rho(distance, mean);
    a.spearman_defined = true;
  } catch (const std::invalid_argument&) {
    a.spearman_defined = false;  // flat curve
  }

  bool all_consecutive = true;
  for (int k = 1; k < criteria.consecutive_up_to; ++k) {
    const DistancePoint* near = nullptr;
    const DistancePoint* far = nullptr;
    for (const DistancePoint& p : curve.points) {
      if (p.distance == k) near = &p;
      if (p.distance == k + 1) far = &p;
    }
    ConsecutiveTest t;
    t.near = k;
    t.far = k + 1;
    if (near && far) {
      try {
        t.report = stats::welch_t_test(near->sample, far->sample);
        t.significant_decrease = t.report.statistic > 0.0 && t.report.p_value < criteria.alpha;
      } catch (const std::invalid_argument&) {
        t.significant_decrease = false;
      }
    }
    all_consecutive = all_consecutive && t.significant_decrease;
    a.consecutive.push_back(t);
  }

  a.detected = a.spearman_defined && a.spearman.rho <= criteria.rho_threshold &&
               a.spearman.p_value < criteria.alpha && all_consecutive;
  return a;
}

std::string curve_csv(const EceCurve& curve) {
  std::string out = "distance,mean_cosine,pairs\n";
  for (const DistancePoint& p : curve.points) {
    out += std::to_string(p.distance) + "," + io::format_double(p.mean_cosine) + "," +
           std::to_string(p.pairs) + "\n";
  }
  return out;
}

std::string assessment_json(const EceAssessment& a) {
  using nlohmann::json;
  json j;
  j["ECE detected"] = a.detected;
  j["spearman"] = a.spearman_defined
                      ? json{{"rho", a.spearman.rho},
                             {"p", a.spearman.p_value},
                             {"exact", a.spearman.exact}}
                      : json(nullptr);
  json tests = json::array();
  for (const ConsecutiveTest& t : a.consecutive) {
    tests.push_back({{"near", t.near},
                     {"far", t.far},
                     {"t", t.report.statistic},
                     {"df", t.report.df},
                     {"p", t.report.p_value},
                     {"significant_decrease", t.significant_decrease}});
  }
  j["welch"] = tests;
  return j.dump(2) + "\n";
}

}  // namespace fnd::echograph
