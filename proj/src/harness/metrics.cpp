#include "fnd/harness/metrics.hpp"

#include <stdexcept>
#include <vector>

namespace fnd::harness {

using corpus::Label;

Metrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.tn = tn;
  const auto d = [](std::size_t x) { return static_cast<double>(x); };
  m.precision = tp + fp == 0 ? 0.0 : d(tp) / d(tp + fp);
  m.recall = tp + fn == 0 ? 0.0 : d(tp) / d(tp + fn);
  const double pr = m.precision + m.recall;
  m.f1 = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;
  const std::size_t total = tp + fp + fn + tn;
  m.accuracy = total == 0 ? 0.0 : d(tp + tn) / d(total);
  return m;
}

Metrics compute_metrics(std::span<const Label> gold, std::span<const Label> predicted) {
  if (gold.empty()) throw std::invalid_argument("cannot evaluate an empty split");
  if (gold.size() != predicted.size()) throw std::invalid_argument("label count mismatch");
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const bool g = gold[i] == Label::kFake;
    const bool p = predicted[i] == Label::kFake;
    if (g && p) {
      ++tp;
    } else if (!g && p) {
      ++fp;
    } else if (g && !p) {
      ++fn;
    } else {
      ++tn;
    }
  }
  return metrics_from_counts(tp, fp, fn, tn);
}

Metrics evaluate(const model::FakeNewsModel& model, std::span<const model::Instance> split) {
  if (split.empty()) throw std::invalid_argument("cannot evaluate an empty split");
  std::vector<Label> gold(split.size());
  std::vector<Label> pred(split.size());
  const auto n = static_cast<std::ptrdiff_t>(split.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    gold[k] = split[k].label;
    pred[k] = model.predict(split[k]).label;
  }
  return compute_metrics(gold, pred);
}

}  // namespace fnd::harness
