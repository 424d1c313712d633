#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fnd/echograph/ece.hpp"
#include "fnd/harness/grid.hpp"
#include "fnd/harness/train.hpp"

namespace fnd::cli {

// Flat "key = value" configuration; '#' starts a comment. Defaults are the
// published experimental settings.
struct RunConfig {
  std::size_t min_count = 10;
  std::size_t max_users = 50;

  std::size_t num_filters = 10;
  double dropout = 0.0;
  std::size_t embedding_dim = 200;

  std::size_t batch_size = 8;
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int patience = 10;
  int max_epochs = 200;

  std::vector<std::size_t> grid_filters{10, 20, 40};
  std::vector<double> grid_dropouts{0.0, 0.2, 0.4, 0.6};
  std::size_t seeds = 5;

  std::size_t baseline_trials = 10000;

  std::size_t external_threshold = 20;
  std::size_t min_pairs = 100;
  int max_distance = 7;
  std::size_t pair_cap = 1'000'000;

  harness::TrainConfig train_config(std::uint64_t seed) const;
  harness::GridSpec grid_spec() const;
  echograph::EceOptions ece_options(std::uint64_t seed) const;
};

/// Throws InputError naming the line for unknown keys or bad values.
RunConfig parse_config(std::string_view text);
/// Defaults when `path` is empty; MissingArtifact when it does not exist.
RunConfig load_config(const std::filesystem::path& path);
std::string config_text(const RunConfig& config);

}  // namespace fnd::cli
