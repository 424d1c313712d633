#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fnd/echograph/graph.hpp"
#include "fnd/stats/stats.hpp"

namespace fnd::echograph {

struct EceOptions {
  std::size_t min_pairs = 100;
  int max_distance = 7;
  std::size_t pair_cap = 1'000'000;  // per distance; above it pairs are sampled
  std::uint64_t seed = 1;
  bool parallel = true;
};

struct DistancePoint {
  int distance = 0;
  double mean_cosine = 0.0;
  std::size_t pairs = 0;        // all pairs at this distance
  std::vector<double> sample;   // similarities the mean is taken over
};

struct EceCurve {
  std::vector<DistancePoint> points;  // ascending distance
};

/// Mean cosine similarity of dataset-user pairs at each exact hop distance.
/// External nodes relay paths but are never endpoints; users without a
/// vector or with a zero vector are skipped. Distances with fewer than
/// min_pairs pairs are dropped; throws std::runtime_error("graph too sparse")
/// when none remain.
EceCurve ece_curve(const SocialGraph& graph, const std::map<std::string, std::vector<double>>& vectors,
                   const EceOptions& options = {});

struct ConsecutiveTest {
  int near = 0;
  int far = 0;
  stats::TestReport report;
  bool significant_decrease = false;  // mean(near) > mean(far), p < alpha
};

struct EceCriteria {
  double rho_threshold = -0.9;
  double alpha = 0.005;
  int consecutive_up_to = 4;
};

struct EceAssessment {
  bool spearman_defined = false;
  stats::SpearmanReport spearman;
  std::vector<ConsecutiveTest> consecutive;
  bool detected = false;
};

/// Spearman of (distance, mean cosine) plus Welch tests between the samples
/// of consecutive distances. Detection requires rho <= -0.9 with p < 0.005
/// and a significant decrease for every consecutive pair up to distance 4.
/// Throws std::invalid_argument for fewer than 3 distances.
EceAssessment ece_assess(const EceCurve& curve, const EceCriteria& criteria = {});

/// "distance,mean_cosine,pairs"
std::string curve_csv(const EceCurve& curve);
std::string assessment_json(const EceAssessment& assessment);

}  // namespace fnd::echograph
