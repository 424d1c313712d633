#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <numeric>

#include "fnd/util/io.hpp"

namespace fnd::testing {

using corpus::Document;
using corpus::Label;
using corpus::Vocabulary;

namespace {

Document random_words(Rng& rng, const std::vector<corpus::TokenId>& pool, std::size_t len,
                      corpus::TokenId marker) {
  Document doc;
  for (std::size_t i = 0; i < len; ++i) doc.push_back(pool[rng.index(pool.size())]);
  doc[rng.index(len)] = marker;
  return doc;
}

}  // namespace

corpus::EncodedDataset separable_dataset(std::size_t n, std::uint64_t seed) {
  corpus::EncodedDataset data;
  data.name = "synthetic";
  std::vector<corpus::TokenId> filler;
  for (int i = 0; i < 20; ++i) filler.push_back(data.vocab.add("w" + std::to_string(i)));
  const corpus::TokenId news_marker[2] = {data.vocab.add("realmark"), data.vocab.add("fakemark")};
  const corpus::TokenId timeline_marker[2] = {data.vocab.add("realuser"), data.vocab.add("fakeuser")};
  const corpus::TokenId desc_marker[2] = {data.vocab.add("realdesc"), data.vocab.add("fakedesc")};

  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const int cls = static_cast<int>(i % 2);
    corpus::EncodedNews news;
    news.id = "n" + std::to_string(i);
    news.label = cls ? Label::kFake : Label::kReal;
    news.title = random_words(rng, filler, 4, news_marker[cls]);
    news.body = random_words(rng, filler, 12, news_marker[cls]);
    for (int u = 0; u < 3; ++u) {
      corpus::EncodedUser user;
      user.id = news.id + "_u" + std::to_string(u);
      user.timeline = random_words(rng, filler, 12, timeline_marker[cls]);
      user.description = random_words(rng, filler, 4, desc_marker[cls]);
      news.users.push_back(user.id);
      data.users.emplace(user.id, std::move(user));
    }
    data.news.push_back(std::move(news));
    data.splits.train.push_back(i);
  }
  data.splits.val = data.splits.train;
  data.splits.test = data.splits.train;
  return data;
}

model::ModelConfig toy_config(model::Setup setup, std::size_t filters, std::size_t vocab,
                              std::size_t dim, double dropout, std::uint64_t seed) {
  model::ModelConfig c;
  c.setup = setup;
  c.num_filters = filters;
  c.vocab_size = vocab;
  c.embedding_dim = dim;
  c.dropout = dropout;
  c.seed = seed;
  return c;
}

model::Instance random_instance(Rng& rng, std::size_t vocab, std::size_t users,
                                std::size_t max_len, Label label) {
  auto doc = [&] {
    Document d(1 + rng.index(max_len));
    for (auto& t : d) {
      t = static_cast<corpus::TokenId>(Vocabulary::kNumSpecials +
                                       rng.index(vocab - Vocabulary::kNumSpecials));
    }
    return d;
  };
  model::Instance inst;
  inst.id = "r";
  inst.label = label;
  inst.news = doc();
  for (std::size_t u = 0; u < users; ++u) inst.users.push_back(doc());
  return inst;
}

GradientCheck gradient_check(model::FakeNewsModel& model, const model::Instance& instance,
                             std::uint64_t dropout_seed, double h) {
  const int target = static_cast<int>(instance.label);
  auto loss = [&] {
    Rng rng(dropout_seed);
    const model::ForwardTrace trace = model.forward(instance, true, &rng);
    // Independent cross-entropy: log-sum-exp minus the target logit.
    const double a = trace.logits[0], b = trace.logits[1];
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m)) - trace.logits[target];
  };
  model.zero_grad();
  {
    Rng rng(dropout_seed);
    const model::ForwardTrace trace = model.forward(instance, true, &rng);
    model.backward(instance, trace);
  }
  GradientCheck out;
  for (nn::Parameter* p : model.parameters()) {
    auto values = p->value.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + h;
      const double up = loss();
      values[i] = saved - h;
      const double down = loss();
      values[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic = p->grad.values()[i];
      const double err = std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
      ++out.entries;
      if (err > out.worst) {
        out.worst = err;
        out.worst_parameter = p->name + "[" + std::to_string(i) + "]";
      }
    }
  }
  return out;
}

PlantedEcho planted_echo(std::size_t nodes, std::size_t reach, std::uint64_t seed) {
  constexpr std::size_t kTopics = 16;
  constexpr double kConcentration = 2.0;
  // 28 hops of rotation (distance 7 at reach 4) stay below half a turn.
  const double step = std::numbers::pi / 40.0;

  PlantedEcho echo;
  Rng rng(seed);
  std::vector<std::string> ids(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "p%05zu", i);
    ids[i] = buf;
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = i + 1; j <= i + reach && j < nodes; ++j) {
      edges.emplace_back(i, j);
      echo.retweets.emplace_back(ids[i], ids[j]);
    }
    const double theta = static_cast<double>(i) * step;
    std::vector<double> v(kTopics);
    for (std::size_t k = 0; k < kTopics; ++k) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / kTopics;
      v[k] = std::exp(kConcentration * std::cos(theta - phi)) * (1.0 + 0.2 * rng.uniform(-1.0, 1.0));
    }
    echo.vectors[ids[i]] = std::move(v);
  }
  std::vector<echograph::NodeRole> roles(nodes, echograph::NodeRole::kDataset);
  echo.graph = echograph::SocialGraph(ids, roles, edges);
  return echo;
}

std::map<std::string, std::vector<double>> shuffled_vectors(
    const std::map<std::string, std::vector<double>>& vectors, std::uint64_t seed) {
  std::vector<std::vector<double>> values;
  for (const auto& [id, v] : vectors) values.push_back(v);
  Rng rng(seed);
  rng.shuffle(values);
  std::map<std::string, std::vector<double>> out;
  std::size_t i = 0;
  for (const auto& [id, v] : vectors) out[id] = values[i++];
  return out;
}

void write_planted_users(const PlantedEcho& echo, const std::filesystem::path& dir) {
  std::map<std::string, std::vector<std::string>> targets;
  for (const auto& [id, v] : echo.vectors) targets[id];
  for (const auto& [from, to] : echo.retweets) targets[from].push_back(to);
  std::string text;
  for (const auto& [id, list] : targets) {
    nlohmann::json j;
    j["id"] = id;
    j["timeline"] = nlohmann::json::array();
    j["description"] = nullptr;
    j["retweets"] = nlohmann::json::array();
    for (const std::string& t : list) j["retweets"].push_back({{"user_id", t}, {"count", 1}});
    text += j.dump() + "\n";
  }
  io::write_file_atomic(dir / "users.jsonl", text);
}

std::vector<std::vector<int>> floyd_warshall(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  constexpr int kInf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [a, b] : edges) {
    if (a == b) continue;
    d[a][b] = 1;
    d[b][a] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (auto& row : d)
    for (int& x : row)
      if (x >= kInf) x = -1;
  return d;
}

std::map<std::string, OracleScore> brute_force_scores(const nn::ConvEncoder& encoder,
                                                      const std::vector<Document>& docs,
                                                      const Vocabulary& vocab,
                                                      const nn::Parameter& classifier,
                                                      std::size_t block_offset) {
  const nn::Matrix& emb = encoder.embeddings().value;
  const std::size_t dim = encoder.dim();
  std::map<std::string, OracleScore> out;
  for (const Document& raw : docs) {
    const Document doc = raw.empty() ? Document{Vocabulary::kPad} : raw;
    for (std::size_t f = 0; f < encoder.num_filters(); ++f) {
      const std::size_t width = f % 3 + 1;
      const auto w = encoder.filter_weights(f);
      const std::size_t len = std::max(doc.size(), width);
      double best = 0.0;
      std::size_t best_t = 0;
      bool found = false;
      for (std::size_t t = 0; t + width <= len; ++t) {
        double pre = encoder.filter_bias(f);
        for (std::size_t j = 0; j < width; ++j) {
          if (t + j >= doc.size()) continue;  // zero padding
          for (std::size_t k = 0; k < dim; ++k) pre += w[j * dim + k] * emb(doc[t + j], k);
        }
        const double act = std::max(0.0, pre);
        if (act > best) {
          best = act;
          best_t = t;
          found = true;
        }
      }
      if (!found) continue;
      std::string key;
      for (std::size_t j = 0; j < width; ++j) {
        if (j) key += ' ';
        key += best_t + j < doc.size() ? vocab.token(doc[best_t + j]) : std::string("<PAD>");
      }
      OracleScore& s = out[key];
      s.real += best * classifier.value(block_offset + f, 0);
      s.fake += best * classifier.value(block_offset + f, 1);
      ++s.occurrences;
    }
  }
  return out;
}

std::vector<std::string> brute_force_salient(const std::map<std::string, OracleScore>& scores) {
  std::vector<double> gaps;
  for (const auto& [k, s] : scores) gaps.push_back(std::abs(s.real - s.fake));
  const double n = static_cast<double>(gaps.size());
  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= n;
  double ss = 0.0;
  for (double g : gaps) ss += (g - mean) * (g - mean);
  const double threshold = mean + std::sqrt(ss / (n - 1.0));
  std::vector<std::string> keys;
  for (const auto& [k, s] : scores)
    if (std::abs(s.real - s.fake) > threshold) keys.push_back(k);
  return keys;
}

namespace {

std::vector<double> midranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double below = 0.0, equal = 0.0;
    for (double w : v) {
      if (w < v[i]) below += 1.0;
      if (w == v[i]) equal += 1.0;
    }
    r[i] = below + (equal + 1.0) / 2.0;
  }
  return r;
}

double corr(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

double spearman_permutation_p(const std::vector<double>& x, const std::vector<double>& y) {
  const std::vector<double> rx = midranks(x);
  std::vector<double> ry = midranks(y);
  const double observed = std::abs(corr(rx, ry));
  std::sort(ry.begin(), ry.end());
  std::size_t hits = 0, total = 0;
  do {
    ++total;
    if (std::abs(corr(rx, ry)) >= observed - 1e-12) ++hits;
  } while (std::next_permutation(ry.begin(), ry.end()));
  // next_permutation skips duplicate arrangements; weight is uniform only
  // without ties, which is all this oracle is used for.
  return static_cast<double>(hits) / static_cast<double>(total);
}

void write_raw_corpus(const std::filesystem::path& dir, std::size_t news, std::size_t users_per_news,
                      std::uint64_t seed) {
  static const char* kReal[] = {"senate", "budget", "report", "economy", "vote"};
  static const char* kFake[] = {"shocking", "hoax", "secret", "miracle", "exposed"};
  static const char* kCommon[] = {"the", "a", "news", "today", "people", "said"};
  Rng rng(seed);
  auto sentence = [&](const char* const* topic, std::size_t len) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) {
      if (i) s += ' ';
      s += rng.bernoulli(0.5) ? topic[rng.index(5)] : kCommon[rng.index(6)];
    }
    return s;
  };
  std::filesystem::create_directories(dir);
  std::ofstream news_out(dir / "news.jsonl");
  std::ofstream users_out(dir / "users.jsonl");
  for (std::size_t i = 0; i < news; ++i) {
    const bool fake = i % 3 == 0;
    const char* const* topic = fake ? kFake : kReal;
    nlohmann::json j;
    j["id"] = "news" + std::to_string(i);
    j["title"] = sentence(topic, 6) + (fake ? " BREAKING!" : "");
    j["body"] = sentence(topic, 20) + " see http://example.com/" + std::to_string(i) + " 2020";
    j["label"] = fake ? "fake" : "real";
    std::vector<std::string> spreaders;
    for (std::size_t u = 0; u < users_per_news; ++u) {
      spreaders.push_back("user" + std::to_string(i) + "_" + std::to_string(u));
    }
    if (i < 2) spreaders.push_back("shared");
    j["tweet_user_ids"] = spreaders;
    news_out << j.dump() << "\n";
    for (std::size_t u = 0; u < users_per_news; ++u) {
      nlohmann::json user;
      user["id"] = spreaders[u];
      user["tweets"] = {sentence(topic, 10), "RT @user" + std::to_string((i + 1) % news) + "_0 " + sentence(topic, 5)};
      if (u % 2 == 0) user["description"] = sentence(topic, 5);
      users_out << user.dump() << "\n";
    }
  }
  nlohmann::json shared;
  shared["id"] = "shared";
  shared["tweets"] = {"spreads everything"};
  users_out << shared.dump() << "\n";
}

std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / ("fnd_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fnd::testing
