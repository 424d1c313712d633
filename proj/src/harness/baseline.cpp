#include "fnd/harness/baseline.hpp"

#include <stdexcept>
#include <vector>

#include "fnd/harness/metrics.hpp"
#include "fnd/stats/stats.hpp"
#include "fnd/util/rng.hpp"

namespace fnd::harness {

BaselineResult frequency_random_baseline(std::span<const corpus::Label> train_labels,
                                         std::span<const corpus::Label> test_labels,
                                         std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (train_labels.empty() || test_labels.empty()) {
    throw std::invalid_argument("baseline needs train and test labels");
  }
  std::size_t fake = 0;
  for (corpus::Label l : train_labels) fake += l == corpus::Label::kFake ? 1 : 0;
  const double p = static_cast<double>(fake) / static_cast<double>(train_labels.size());

  Rng rng(seed);
  std::vector<double> scores;
  scores.reserve(trials);
  std::vector<corpus::Label> predicted(test_labels.size());
  for (std::size_t t = 0; t < trials; ++t) {
    for (corpus::Label& l : predicted) {
      l = rng.bernoulli(p) ? corpus::Label::kFake : corpus::Label::kReal;
    }
    scores.push_back(compute_metrics(test_labels, predicted).f1);
  }
  const stats::MeanStd ms = stats::mean_std(scores);
  return {p, ms.mean, ms.std};
}

}  // namespace fnd::harness
