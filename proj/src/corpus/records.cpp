#include "fnd/corpus/records.hpp"

#include <cctype>
#include <fstream>
#include <json.hpp>

#include "fnd/util/error.hpp"

namespace fnd::corpus {
namespace {

using nlohmann::json;

std::string id_string(const json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw InputError(where + ": id must be a string or integer");
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

template <class Fn>
void for_each_json_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw MissingArtifact(path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InputError(where + ": invalid JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw InputError(where + ": expected a JSON object");
    try {
      fn(obj, where);
    } catch (const json::exception& e) {
      throw InputError(where + ": " + e.what());
    }
  }
}

}  // namespace

std::string_view to_string(Label label) { return label == Label::kFake ? "fake" : "real"; }

Label parse_label(std::string_view text) {
  const std::string lower = to_lower(text);
  if (lower == "fake") return Label::kFake;
  if (lower == "real") return Label::kReal;
  throw InputError("unknown label \"" + std::string(text) + "\"");
}

std::vector<Retweet> parse_retweet_prefixes(const std::vector<std::string>& tweets) {
  std::map<std::string, std::size_t> counts;
  for (const std::string& tweet : tweets) {
    const std::size_t start = tweet.find_first_not_of(" \t");
    if (start == std::string::npos || tweet.size() < start + 4) continue;
    if (to_lower(tweet.substr(start, 3)) != "rt " && to_lower(tweet.substr(start, 3)) != "rt@") {
      continue;
    }
    std::size_t at = tweet.find('@', start + 2);
    if (at == std::string::npos || tweet.find_first_not_of(' ', start + 2) != at) continue;
    std::size_t end = at + 1;
    while (end < tweet.size() &&
           (std::isalnum(static_cast<unsigned char>(tweet[end])) || tweet[end] == '_')) {
      ++end;
    }
    if (end > at + 1) ++counts[tweet.substr(at + 1, end - at - 1)];
  }
  std::vector<Retweet> out;
  for (auto& [user, n] : counts) out.push_back({user, n});
  return out;
}

std::vector<NewsRecord> load_news_jsonl(const std::filesystem::path& path) {
  std::vector<NewsRecord> news;
  for_each_json_line(path, [&](const json& obj, const std::string& where) {
    NewsRecord rec;
    rec.id = id_string(require(obj, "id", where), where);
    rec.title = preprocess(require(obj, "title", where).get<std::string>(), TextField::kTitle);
    const json& body = require(obj, "body", where);
    if (!body.is_null()) rec.body = preprocess(body.get<std::string>(), TextField::kBody);
    try {
      rec.label = parse_label(require(obj, "label", where).get<std::string>());
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    const json& ids = require(obj, "tweet_user_ids", where);
    if (!ids.is_array()) throw InputError(where + ": tweet_user_ids must be an array");
    for (const json& id : ids) rec.spreader_ids.push_back(id_string(id, where));
    news.push_back(std::move(rec));
  });
  return news;
}

UserMap load_users_jsonl(const std::filesystem::path& path) {
  UserMap users;
  for_each_json_line(path, [&](const json& obj, const std::string& where) {
    UserRecord rec;
    rec.id = id_string(require(obj, "id", where), where);
    const json& tweets = require(obj, "tweets", where);
    if (!tweets.is_array()) throw InputError(where + ": tweets must be an array");
    std::vector<std::string> raw;
    Tokens all;
    for (const json& t : tweets) {
      raw.push_back(t.get<std::string>());
      Tokens toks = tokenize(raw.back());
      all.insert(all.end(), toks.begin(), toks.end());
    }
    rec.timeline = normalize(all, TextField::kTimeline);

    auto desc = obj.find("description");
    if (desc != obj.end() && !desc->is_null()) {
      const std::string text = desc->get<std::string>();
      if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
        rec.description = preprocess(text, TextField::kDescription);
      }
    }

    auto rts = obj.find("retweets");
    if (rts != obj.end()) {
      if (!rts->is_array()) throw InputError(where + ": retweets must be an array");
      for (const json& r : *rts) {
        Retweet rt;
        rt.user_id = id_string(require(r, "user_id", where), where);
        const long long count = r.value("count", 1LL);
        if (count < 1) throw InputError(where + ": retweet count must be >= 1");
        rt.count = static_cast<std::size_t>(count);
        rec.retweets.push_back(std::move(rt));
      }
    } else {
      rec.retweets = parse_retweet_prefixes(raw);
    }
    const std::string id = rec.id;
    if (!users.emplace(id, std::move(rec)).second) {
      throw InputError(where + ": duplicate user id " + id);
    }
  });
  return users;
}

}  // namespace fnd::corpus
