#pragma once

#include <cstdint>
#include <span>

#include "fnd/corpus/records.hpp"

namespace fnd::harness {

struct BaselineResult {
  double fake_rate = 0.0;  // p, the fake share of the training labels
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
};

/// Each trial labels every test item fake with probability p, independently;
/// returns the F score averaged over trials.
BaselineResult frequency_random_baseline(std::span<const corpus::Label> train_labels,
                                         std::span<const corpus::Label> test_labels,
                                         std::size_t trials, std::uint64_t seed);

}  // namespace fnd::harness
