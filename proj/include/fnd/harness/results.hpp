#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fnd/harness/grid.hpp"
#include "fnd/harness/train.hpp"

namespace fnd::harness {

/// One test-set result: a (dataset, setup, seed) run.
struct ResultRow {
  std::string dataset;
  std::string setup;
  std::uint64_t seed = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Header "dataset,setup,seed,precision,recall,f1".
std::string results_csv(std::span<const ResultRow> rows);
/// Throws InputError on a malformed file.
std::vector<ResultRow> parse_results_csv(std::string_view text);

/// "epoch,train_loss,val_precision,val_recall,val_f1,best"
std::string epochs_csv(const RunResult& run);

/// "num_filters,dropout,best_epoch,val_f1,selected"
std::string grid_csv(const GridResult& grid);

/// Long form, one row per (dataset, setup): runs, mean and sample std of F.
std::string summary_csv(std::span<const ResultRow> rows);

/// Wide form: one row per dataset, one column per setup (mean F), columns
/// in the order News, TL, DE, TL+DE, N+TL, N+DE, N+TL+DE; blank when absent.
std::string table_csv(std::span<const ResultRow> rows);

}  // namespace fnd::harness
