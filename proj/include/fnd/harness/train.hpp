#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fnd/harness/metrics.hpp"
#include "fnd/nn/adam.hpp"

namespace fnd::harness {

struct TrainConfig {
  std::size_t batch_size = 8;
  nn::AdamConfig adam;
  int patience = 10;
  int max_epochs = 200;
  std::uint64_t seed = 1;
};

/// Patience-based early stopping on a score where larger is better and an
/// improvement must be strict.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience);

  /// Records the score of `epoch`; returns true when training should stop.
  bool observe(int epoch, double score);

  int best_epoch() const { return best_epoch_; }
  double best_score() const { return best_score_; }
  bool improved_last() const { return improved_last_; }

 private:
  int patience_;
  int best_epoch_ = 0;
  double best_score_ = -1.0;
  int since_best_ = 0;
  bool improved_last_ = false;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  Metrics val;
};

struct RunResult {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;  // 0: no epoch ran, parameters are the initial ones
  Metrics best_val;
  std::optional<Metrics> test;  // set by run_experiment, from best-epoch parameters
};

/// Zero-initialized gradients are accumulated for every instance of the batch
/// with weight 1/|batch|; returns the mean loss. Does not step the optimizer.
double accumulate_batch(model::FakeNewsModel& model, std::span<const model::Instance> batch,
                        Rng& rng);

/// Seeded shuffled mini-batches, Adam, per-epoch validation F, early
/// stopping; the model ends holding its best-epoch parameters. Throws
/// TrainingDiverged on a non-finite loss.
RunResult train(model::FakeNewsModel& model, std::span<const model::Instance> train_split,
                std::span<const model::Instance> val_split, const TrainConfig& config);

/// train(), then scores the test split with the restored best-epoch model.
RunResult run_experiment(model::FakeNewsModel& model, std::span<const model::Instance> train_split,
                         std::span<const model::Instance> val_split,
                         std::span<const model::Instance> test_split, const TrainConfig& config);

}  // namespace fnd::harness
