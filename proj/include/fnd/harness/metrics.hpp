#pragma once

#include <cstddef>
#include <span>

#include "fnd/corpus/records.hpp"
#include "fnd/model/model.hpp"

namespace fnd::harness {

/// Binary scores with fake as the positive class. Precision (recall) is 0
/// when nothing is predicted (present) as fake; F is 0 when P + R = 0.
struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
};

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);

/// Throws std::invalid_argument on empty or mismatched inputs.
Metrics compute_metrics(std::span<const corpus::Label> gold,
                        std::span<const corpus::Label> predicted);

/// Predicts every instance (evaluation mode) and scores the predictions.
Metrics evaluate(const model::FakeNewsModel& model, std::span<const model::Instance> split);

}  // namespace fnd::harness
