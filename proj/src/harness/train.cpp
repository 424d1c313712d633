#include "fnd/harness/train.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fnd/util/error.hpp"

namespace fnd::harness {

EarlyStopping::EarlyStopping(int patience) : patience_(patience) {
  if (patience < 1) throw std::invalid_argument("patience must be >= 1");
}

bool EarlyStopping::observe(int epoch, double score) {
  improved_last_ = score > best_score_;
  if (improved_last_) {
    best_score_ = score;
    best_epoch_ = epoch;
    since_best_ = 0;
  } else {
    ++since_best_;
  }
  // A perfect score cannot be strictly beaten, so waiting out the patience
  // would not change the best epoch.
  return since_best_ >= patience_ || best_score_ >= 1.0;
}

namespace {

double accumulate(model::FakeNewsModel& model, std::span<const model::Instance* const> batch,
                  Rng& rng) {
  const double scale = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const model::Instance* inst : batch) {
    const model::ForwardTrace trace = model.forward(*inst, true, &rng);
    loss += model.backward(*inst, trace, scale);
  }
  return loss * scale;
}

}  // namespace

double accumulate_batch(model::FakeNewsModel& model, std::span<const model::Instance> batch,
                        Rng& rng) {
  std::vector<const model::Instance*> ptrs;
  for (const model::Instance& inst : batch) ptrs.push_back(&inst);
  return accumulate(model, ptrs, rng);
}

RunResult train(model::FakeNewsModel& model, std::span<const model::Instance> train_split,
                std::span<const model::Instance> val_split, const TrainConfig& config) {
  if (config.batch_size < 1) throw std::invalid_argument("batch size must be >= 1");
  if (train_split.empty()) throw std::invalid_argument("empty training split");

  Rng rng(config.seed);
  EarlyStopping stopper(config.patience);
  auto params = model.parameters();
  model.zero_grad();

  RunResult result;
  std::vector<nn::Matrix> best_values;
  auto snapshot = [&] {
    best_values.clear();
    for (const nn::Parameter* p : params) best_values.push_back(p->value);
  };
  snapshot();

  std::vector<std::size_t> order(train_split.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<const model::Instance*> batch;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(&train_split[order[i]]);
      const double loss = accumulate(model, batch, rng);
      if (!std::isfinite(loss)) {
        throw TrainingDiverged("non-finite loss at epoch " + std::to_string(epoch));
      }
      nn::adam_step(params, config.adam);
      loss_sum += loss;
      ++batches;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(batches);
    rec.val = evaluate(model, val_split);
    result.epochs.push_back(rec);

    const bool stop = stopper.observe(epoch, rec.val.f1);
    if (stopper.improved_last()) {
      snapshot();
      result.best_epoch = epoch;
      result.best_val = rec.val;
    }
    if (stop) break;
  }

  if (result.best_epoch == 0) {
    result.best_val = evaluate(model, val_split);
  } else {
    for (std::size_t i = 0; i < params.size(); ++i) params[i]->value = best_values[i];
  }
  return result;
}

RunResult run_experiment(model::FakeNewsModel& model, std::span<const model::Instance> train_split,
                         std::span<const model::Instance> val_split,
                         std::span<const model::Instance> test_split, const TrainConfig& config) {
  RunResult result = train(model, train_split, val_split, config);
  result.test = evaluate(model, test_split);
  return result;
}

}  // namespace fnd::harness
