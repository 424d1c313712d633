#pragma once

// Shared fixtures and independent oracles for unit and acceptance tests.
// Oracles here deliberately avoid the library code paths they check.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fnd/corpus/dataset.hpp"
#include "fnd/echograph/graph.hpp"
#include "fnd/model/model.hpp"
#include "fnd/util/rng.hpp"

namespace fnd::testing {

/// n instances, labels alternating, where each modality (news, timeline,
/// description) carries a class marker token. Every split holds all items.
corpus::EncodedDataset separable_dataset(std::size_t n = 40, std::uint64_t seed = 3);

model::ModelConfig toy_config(model::Setup setup, std::size_t filters, std::size_t vocab,
                              std::size_t dim, double dropout, std::uint64_t seed);

/// Random documents over ids [kNumSpecials, vocab) with occasional <PAD>-free
/// specials; lengths in [1, max_len].
model::Instance random_instance(Rng& rng, std::size_t vocab, std::size_t users,
                                std::size_t max_len, corpus::Label label);

struct GradientCheck {
  double worst = 0.0;  // max |analytic - numeric| / max(1, |analytic|)
  std::string worst_parameter;
  std::size_t entries = 0;
};

/// Central differences of the training loss (dropout masks fixed by
/// replaying `dropout_seed`) against backward(), over every parameter entry.
GradientCheck gradient_check(model::FakeNewsModel& model, const model::Instance& instance,
                             std::uint64_t dropout_seed, double h = 1e-4);

// ---- echo chamber ----

struct PlantedEcho {
  echograph::SocialGraph graph;
  std::map<std::string, std::vector<double>> vectors;
  std::vector<std::pair<std::string, std::string>> retweets;  // (retweeter, retweeted)
};

/// Users on a chain lattice (node i linked to i+1..i+reach) whose topic
/// mixture rotates slowly along the chain, so similarity falls with hop
/// distance by construction.
PlantedEcho planted_echo(std::size_t nodes = 2400, std::size_t reach = 4, std::uint64_t seed = 5);

/// Same vectors, randomly reassigned to users.
std::map<std::string, std::vector<double>> shuffled_vectors(
    const std::map<std::string, std::vector<double>>& vectors, std::uint64_t seed);

/// Processed-format users.jsonl for the planted fixture (retweets only).
void write_planted_users(const PlantedEcho& echo, const std::filesystem::path& dir);

/// All-pairs hop distances, -1 for unreachable.
std::vector<std::vector<int>> floyd_warshall(std::size_t n,
                                             const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// ---- attribution ----

struct OracleScore {
  double real = 0.0;
  double fake = 0.0;
  std::size_t occurrences = 0;
};

/// Enumerates every window of every filter of `encoder` on every document,
/// takes the first maximal ReLU activation per (document, filter) and sums
/// v·W_f0 / v·W_f1 per n-gram key ("a b c" of surface tokens).
std::map<std::string, OracleScore> brute_force_scores(const nn::ConvEncoder& encoder,
                                                      const std::vector<corpus::Document>& docs,
                                                      const corpus::Vocabulary& vocab,
                                                      const nn::Parameter& classifier,
                                                      std::size_t block_offset);

/// Keys whose |R - F| exceeds mean + sample std of all gaps.
std::vector<std::string> brute_force_salient(const std::map<std::string, OracleScore>& scores);

// ---- statistics ----

/// Two-sided exact permutation p of Spearman's rho by enumerating every
/// permutation of y (n ≤ 9).
double spearman_permutation_p(const std::vector<double>& x, const std::vector<double>& y);

// ---- raw corpus ----

/// news.jsonl and users.jsonl in the raw input format: `news` items with
/// `users_per_news` unique spreaders each plus one user shared by the first
/// two news (removed by filtering). Words repeat enough to pass min_count 10.
void write_raw_corpus(const std::filesystem::path& dir, std::size_t news = 30,
                      std::size_t users_per_news = 3, std::uint64_t seed = 9);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace fnd::testing
