#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fnd/harness/train.hpp"

namespace fnd::harness {

struct GridCell {
  std::size_t num_filters = 10;
  double dropout = 0.0;
};

struct GridSpec {
  std::vector<std::size_t> filters{10, 20, 40};
  std::vector<double> dropouts{0.0, 0.2, 0.4, 0.6};

  /// Cartesian product, filters-major, both axes in the given order.
  std::vector<GridCell> cells() const;
};

struct GridEntry {
  GridCell cell;
  RunResult run;
};

struct GridResult {
  std::vector<GridEntry> entries;
  std::size_t best = 0;
  const GridEntry& best_entry() const { return entries.at(best); }
};

using CellRunner = std::function<RunResult(const GridCell&)>;

/// Highest best-validation F; ties go to fewer filters, then lower dropout.
std::size_t select_best(std::span<const GridEntry> entries);

/// Runs every cell once through `runner` and selects the best.
GridResult grid_search(const GridSpec& spec, const CellRunner& runner);

struct SeedSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<double> values;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
};

/// Runs seeds seed0 .. seed0+k-1 and summarizes the returned scores.
SeedSummary multi_seed_eval(std::size_t k, std::uint64_t seed0,
                            const std::function<double(std::uint64_t)>& run);

}  // namespace fnd::harness
