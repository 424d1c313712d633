#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fnd/corpus/records.hpp"
#include "fnd/corpus/vocabulary.hpp"

namespace fnd::corpus {

/// Indices into the news list.
struct Splits {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

struct DatasetStats {
  std::size_t news = 0;
  std::size_t fake = 0;
  std::size_t real = 0;
  std::size_t users = 0;
  std::size_t users_with_description = 0;
  double description_fraction = 0.0;
};

struct ProcessedDataset {
  std::vector<NewsRecord> news;
  UserMap users;
  Splits splits;
  DatasetStats stats;
};

/// Drops users that spread more than one news (and spreaders with no user
/// record), drops news left without spreaders, then samples at most
/// `max_users` spreaders per news without replacement.
ProcessedDataset filter_and_sample(std::vector<NewsRecord> news, const UserMap& users,
                                   std::size_t max_users, std::uint64_t seed);

using SplitRatios = std::array<double, 3>;
inline constexpr SplitRatios kDefaultRatios{0.8, 0.1, 0.1};

/// Seeded permutation of 0..n-1 cut into train/val/test. Validation and test
/// get round(ratio*n) items (at least one each); train takes the rest.
Splits split(std::size_t n, SplitRatios ratios, std::uint64_t seed);

DatasetStats compute_stats(const std::vector<NewsRecord>& news, const UserMap& users);

// ---- encoded form, as written to a processed dataset directory ----

struct EncodedNews {
  std::string id;
  Label label = Label::kReal;
  Document title;
  Document body;
  std::vector<std::string> users;
};

struct EncodedUser {
  std::string id;
  Document timeline;
  std::optional<Document> description;
  std::vector<Retweet> retweets;
};

struct EncodedDataset {
  std::string name;
  Vocabulary vocab;
  std::vector<EncodedNews> news;
  std::map<std::string, EncodedUser> users;
  Splits splits;
  DatasetStats stats;
};

/// Builds the vocabulary from train-split news text and the train spreaders'
/// text only, then encodes every record with it.
EncodedDataset encode_dataset(const ProcessedDataset& data, std::size_t min_count,
                              std::string name);

/// Files: vocab.tsv, news.jsonl, users.jsonl, splits.json, stats.json.
void write_processed(const EncodedDataset& data, const std::filesystem::path& dir);
EncodedDataset read_processed(const std::filesystem::path& dir);
/// users.jsonl alone; enough for the social graph.
std::map<std::string, EncodedUser> read_processed_users(const std::filesystem::path& dir);

std::string stats_json(const DatasetStats& stats, const Splits& splits, const std::string& name);

}  // namespace fnd::corpus
