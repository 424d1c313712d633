#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace fnd::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitMissing = 3;

struct Options {
  std::filesystem::path data;
  std::filesystem::path config;
  std::filesystem::path out;
  std::filesystem::path lexicon;
  std::filesystem::path embeddings;
  std::filesystem::path model;    // checkpoint for eval / interpret / echo
  std::filesystem::path vectors;  // precomputed topic vectors for echo
  std::string setup;
  std::string name;  // dataset name for preprocess; defaults to the data dir name
  std::uint64_t seed = 1;
  std::vector<std::filesystem::path> inputs;  // results CSVs for report
};

// Each command returns an exit code; diagnostics go to `err`, a one-line
// summary to `out`. Everything written under Options::out except
// manifest.json is a pure function of inputs, config and seed.
int cmd_preprocess(const Options& options, std::ostream& out, std::ostream& err);
int cmd_train(const Options& options, std::ostream& out, std::ostream& err);
int cmd_grid(const Options& options, std::ostream& out, std::ostream& err);
int cmd_eval(const Options& options, std::ostream& out, std::ostream& err);
int cmd_baseline(const Options& options, std::ostream& out, std::ostream& err);
int cmd_interpret(const Options& options, std::ostream& out, std::ostream& err);
int cmd_echo(const Options& options, std::ostream& out, std::ostream& err);
int cmd_report(const Options& options, std::ostream& out, std::ostream& err);

/// Runs `body`, mapping InputError and std::invalid_argument to exit 2,
/// MissingArtifact to exit 3 and anything else to exit 1.
int guarded(const std::function<void()>& body, std::ostream& err);

}  // namespace fnd::cli
