#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fnd/corpus/text.hpp"

namespace fnd::corpus {

// Logit index 0 is real, 1 is fake.
enum class Label : int { kReal = 0, kFake = 1 };

std::string_view to_string(Label label);
/// Accepts "fake"/"real" (any case); throws InputError otherwise.
Label parse_label(std::string_view text);

struct Retweet {
  std::string user_id;
  std::size_t count = 1;
};

struct NewsRecord {
  std::string id;
  Tokens title;
  Tokens body;
  Label label = Label::kReal;
  std::vector<std::string> spreader_ids;
};

struct UserRecord {
  std::string id;
  Tokens timeline;
  std::optional<Tokens> description;
  std::vector<Retweet> retweets;
};

using UserMap = std::map<std::string, UserRecord>;

/// One JSON object per line:
///   {"id","title","body","label","tweet_user_ids":[...]}
/// Text is tokenized and normalized on the way in. Errors carry file:line.
std::vector<NewsRecord> load_news_jsonl(const std::filesystem::path& path);

/// {"id","tweets":[...],"description":string|null,"retweets":[{"user_id","count"}]}
/// When "retweets" is absent the "RT @user" tweet prefixes are counted instead.
UserMap load_users_jsonl(const std::filesystem::path& path);

/// Counts "RT @name" prefixes across tweets; sorted by user id.
std::vector<Retweet> parse_retweet_prefixes(const std::vector<std::string>& tweets);

}  // namespace fnd::corpus
