#include "fnd/corpus/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <set>
#include <unordered_map>

#include "fnd/util/error.hpp"
#include "fnd/util/io.hpp"
#include "fnd/util/rng.hpp"

namespace fnd::corpus {
namespace {

using nlohmann::json;

std::size_t rounded_share(double ratio, std::size_t n) {
  const auto share = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 0.5));
  return std::max<std::size_t>(1, share);
}

json document_json(const Document& doc) { return json(doc); }

Document document_from(const json& value) { return value.get<Document>(); }

}  // namespace

ProcessedDataset filter_and_sample(std::vector<NewsRecord> news, const UserMap& users,
                                   std::size_t max_users, std::uint64_t seed) {
  std::unordered_map<std::string, std::size_t> news_per_user;
  for (NewsRecord& rec : news) {
    // Repeated ids inside one news count once.
    std::vector<std::string> unique;
    std::set<std::string> seen;
    for (const std::string& id : rec.spreader_ids) {
      if (seen.insert(id).second) unique.push_back(id);
    }
    rec.spreader_ids = std::move(unique);
    for (const std::string& id : rec.spreader_ids) ++news_per_user[id];
  }

  Rng rng(seed);
  ProcessedDataset out;
  for (NewsRecord& rec : news) {
    std::vector<std::string> kept;
    for (const std::string& id : rec.spreader_ids) {
      if (news_per_user[id] == 1 && users.count(id) > 0) kept.push_back(id);
    }
    if (kept.empty()) continue;
    if (kept.size() > max_users) {
      std::vector<std::size_t> order(kept.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      rng.shuffle(order);
      order.resize(max_users);
      std::sort(order.begin(), order.end());
      std::vector<std::string> sampled;
      sampled.reserve(max_users);
      for (std::size_t i : order) sampled.push_back(kept[i]);
      kept = std::move(sampled);
    }
    rec.spreader_ids = std::move(kept);
    for (const std::string& id : rec.spreader_ids) out.users.emplace(id, users.at(id));
    out.news.push_back(std::move(rec));
  }
  out.stats = compute_stats(out.news, out.users);
  return out;
}

Splits split(std::size_t n, SplitRatios ratios, std::uint64_t seed) {
  if (n < 3) throw InputError("too few records");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  const std::size_t n_val = rounded_share(ratios[1], n);
  const std::size_t n_test = rounded_share(ratios[2], n);
  if (n_val + n_test >= n) throw InputError("too few records");

  Splits s;
  s.train.assign(order.begin(), order.end() - static_cast<std::ptrdiff_t>(n_val + n_test));
  s.val.assign(order.end() - static_cast<std::ptrdiff_t>(n_val + n_test),
               order.end() - static_cast<std::ptrdiff_t>(n_test));
  s.test.assign(order.end() - static_cast<std::ptrdiff_t>(n_test), order.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.val.begin(), s.val.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

DatasetStats compute_stats(const std::vector<NewsRecord>& news, const UserMap& users) {
  DatasetStats st;
  st.news = news.size();
  for (const NewsRecord& rec : news) {
    if (rec.label == Label::kFake) {
      ++st.fake;
    } else {
      ++st.real;
    }
  }
  st.users = users.size();
  for (const auto& [id, user] : users) {
    if (user.description) ++st.users_with_description;
  }
  st.description_fraction =
      st.users == 0 ? 0.0
                    : static_cast<double>(st.users_with_description) / static_cast<double>(st.users);
  return st;
}

EncodedDataset encode_dataset(const ProcessedDataset& data, std::size_t min_count,
                              std::string name) {
  std::vector<Tokens> corpus;
  for (std::size_t i : data.splits.train) {
    const NewsRecord& rec = data.news[i];
    corpus.push_back(rec.title);
    corpus.push_back(rec.body);
    for (const std::string& uid : rec.spreader_ids) {
      const UserRecord& user = data.users.at(uid);
      corpus.push_back(user.timeline);
      if (user.description) corpus.push_back(*user.description);
    }
  }

  EncodedDataset out;
  out.name = std::move(name);
  out.vocab = build_vocabulary(corpus, min_count);
  out.splits = data.splits;
  out.stats = data.stats;
  for (const NewsRecord& rec : data.news) {
    out.news.push_back({rec.id, rec.label, encode(rec.title, out.vocab),
                        encode(rec.body, out.vocab), rec.spreader_ids});
  }
  for (const auto& [id, user] : data.users) {
    EncodedUser eu;
    eu.id = id;
    eu.timeline = encode(user.timeline, out.vocab);
    if (user.description) eu.description = encode(*user.description, out.vocab);
    eu.retweets = user.retweets;
    out.users.emplace(id, std::move(eu));
  }
  return out;
}

std::string stats_json(const DatasetStats& stats, const Splits& splits, const std::string& name) {
  json j;
  j["name"] = name;
  j["news"] = stats.news;
  j["fake"] = stats.fake;
  j["real"] = stats.real;
  j["users"] = stats.users;
  j["users_with_description"] = stats.users_with_description;
  j["description_fraction"] = stats.description_fraction;
  j["splits"] = {{"train", splits.train.size()},
                 {"val", splits.val.size()},
                 {"test", splits.test.size()}};
  return j.dump(2) + "\n";
}

void write_processed(const EncodedDataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  io::write_file_atomic(dir / "vocab.tsv", data.vocab.to_tsv());

  std::string news;
  for (const EncodedNews& n : data.news) {
    json j;
    j["id"] = n.id;
    j["label"] = to_string(n.label);
    j["title"] = document_json(n.title);
    j["body"] = document_json(n.body);
    j["users"] = n.users;
    news += j.dump() + "\n";
  }
  io::write_file_atomic(dir / "news.jsonl", news);

  std::string users;
  for (const auto& [id, u] : data.users) {
    json j;
    j["id"] = id;
    j["timeline"] = document_json(u.timeline);
    j["description"] = u.description ? document_json(*u.description) : json(nullptr);
    json rts = json::array();
    for (const Retweet& r : u.retweets) rts.push_back({{"user_id", r.user_id}, {"count", r.count}});
    j["retweets"] = rts;
    users += j.dump() + "\n";
  }
  io::write_file_atomic(dir / "users.jsonl", users);

  auto ids_of = [&](const std::vector<std::size_t>& idx) {
    json arr = json::array();
    for (std::size_t i : idx) arr.push_back(data.news[i].id);
    return arr;
  };
  json splits;
  splits["train"] = ids_of(data.splits.train);
  splits["val"] = ids_of(data.splits.val);
  splits["test"] = ids_of(data.splits.test);
  io::write_file_atomic(dir / "splits.json", splits.dump(2) + "\n");
  io::write_file_atomic(dir / "stats.json", stats_json(data.stats, data.splits, data.name));
}

namespace {

template <class Fn>
void parse_lines(const std::filesystem::path& path, Fn&& fn) {
  const std::string text = io::read_file(path);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw InputError(path.filename().string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace

std::map<std::string, EncodedUser> read_processed_users(const std::filesystem::path& dir) {
  std::map<std::string, EncodedUser> users;
  parse_lines(dir / "users.jsonl", [&](const json& j) {
    EncodedUser u;
    u.id = j.at("id").get<std::string>();
    u.timeline = document_from(j.at("timeline"));
    if (!j.at("description").is_null()) u.description = document_from(j.at("description"));
    for (const json& r : j.at("retweets")) {
      u.retweets.push_back({r.at("user_id").get<std::string>(), r.at("count").get<std::size_t>()});
    }
    const std::string id = u.id;
    users.emplace(id, std::move(u));
  });
  return users;
}

EncodedDataset read_processed(const std::filesystem::path& dir) {
  EncodedDataset data;
  data.vocab = Vocabulary::from_tsv(io::read_file(dir / "vocab.tsv"));

  parse_lines(dir / "news.jsonl", [&](const json& j) {
    data.news.push_back({j.at("id").get<std::string>(),
                         parse_label(j.at("label").get<std::string>()),
                         document_from(j.at("title")), document_from(j.at("body")),
                         j.at("users").get<std::vector<std::string>>()});
  });
  data.users = read_processed_users(dir);

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < data.news.size(); ++i) index[data.news[i].id] = i;
  const json splits = json::parse(io::read_file(dir / "splits.json"));
  auto indices = [&](const char* key) {
    std::vector<std::size_t> out;
    for (const json& id : splits.at(key)) {
      auto it = index.find(id.get<std::string>());
      if (it == index.end()) throw InputError("splits.json references unknown news " + id.dump());
      out.push_back(it->second);
    }
    return out;
  };
  data.splits = {indices("train"), indices("val"), indices("test")};

  const json stats = json::parse(io::read_file(dir / "stats.json"));
  data.name = stats.value("name", dir.filename().string());
  data.stats.news = stats.at("news").get<std::size_t>();
  data.stats.fake = stats.at("fake").get<std::size_t>();
  data.stats.real = stats.at("real").get<std::size_t>();
  data.stats.users = stats.at("users").get<std::size_t>();
  data.stats.users_with_description = stats.at("users_with_description").get<std::size_t>();
  data.stats.description_fraction = stats.at("description_fraction").get<double>();
  return data;
}

}  // namespace fnd::corpus
