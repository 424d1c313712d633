#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "fnd/echograph/ece.hpp"
#include "fnd/echograph/graph.hpp"
#include "fnd/echograph/topics.hpp"
#include "fnd/interpret/lexicon.hpp"

using namespace fnd;
using namespace fnd::echograph;

namespace {

RetweetSource src(const std::string& id, std::vector<corpus::Retweet> rts) { return {id, std::move(rts)}; }

// Chain lattice without topic structure, for vector-only checks.
SocialGraph chain(std::size_t n, std::size_t reach) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("c" + std::to_string(1000 + i));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j <= i + reach && j < n; ++j) edges.emplace_back(i, j);
  return SocialGraph(ids, std::vector<NodeRole>(n, NodeRole::kDataset), edges);
}

EceOptions options(std::size_t min_pairs = 100) {
  EceOptions o;
  o.min_pairs = min_pairs;
  return o;
}

}  // namespace

TEST_CASE("external users need the retweet threshold") {
  const std::vector<RetweetSource> nineteen = {src("a", {{"ext", 10}}), src("b", {{"ext", 9}})};
  CHECK(build_graph(nineteen).node_count() == 2);
  const std::vector<RetweetSource> twenty = {src("a", {{"ext", 10}}), src("b", {{"ext", 10}})};
  const SocialGraph g = build_graph(twenty);
  REQUIRE(g.node_count() == 3);
  const auto ext = g.find("ext");
  REQUIRE(ext.has_value());
  CHECK(g.role(*ext) == NodeRole::kExternal);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("mutual retweets make one undirected edge") {
  const std::vector<RetweetSource> users = {src("a", {{"b", 1}}), src("b", {{"a", 3}}), src("c", {})};
  const SocialGraph g = build_graph(users);
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(*g.find("a"), *g.find("b")));
  CHECK(g.edge_list_tsv() == "a\tb\n");
}

TEST_CASE("bfs distances") {
  const std::vector<RetweetSource> path = {src("a", {{"b", 1}}), src("b", {{"c", 1}}), src("c", {})};
  const SocialGraph g = build_graph(path);
  const auto d = bfs_distances(g, std::string_view("a"));
  CHECK(d.at("a") == 0);
  CHECK(d.at("c") == 2);
  const auto limited = bfs_distances(g, std::string_view("a"), 1);
  CHECK(limited.count("c") == 0);
  CHECK_THROWS_AS(bfs_distances(g, std::string_view("zz")), std::invalid_argument);
}

TEST_CASE("bfs equals Floyd-Warshall and satisfies the triangle inequality") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(40);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(100 + i));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    const std::size_t m = rng.index(2 * n);
    for (std::size_t e = 0; e < m; ++e) edges.emplace_back(rng.index(n), rng.index(n));
    const SocialGraph g(ids, std::vector<NodeRole>(n, NodeRole::kDataset), edges);
    const auto fw = testing::floyd_warshall(n, edges);
    std::vector<std::vector<int>> all;
    for (std::size_t s = 0; s < n; ++s) {
      all.push_back(bfs_distances(g, s, static_cast<int>(n)));
      CHECK(all.back() == fw[s]);
    }
    for (int k = 0; k < 50; ++k) {
      const std::size_t a = rng.index(n), b = rng.index(n), c = rng.index(n);
      if (all[a][b] >= 0 && all[b][c] >= 0) CHECK(all[a][c] <= all[a][b] + all[b][c]);
    }
  }
}

TEST_CASE("topic activations sum over topical winners") {
  const interpret::Lexicon lex = interpret::parse_lexicon(R"({"topics": {"war": ["army", "battle"], "faith": ["god"]}})");
  corpus::Vocabulary vocab;
  const auto army = vocab.add("army");
  const auto battle = vocab.add("battle");
  const auto chair = vocab.add("chair");
  nn::ConvEncoder enc("user", vocab.size(), 2, 4);  // filters 0 and 3 are unigrams
  enc.embeddings().value.fill(0.0);
  enc.embeddings().value(army, 0) = 1.0;
  enc.embeddings().value(battle, 1) = 1.0;
  enc.embeddings().value(chair, 0) = 0.1;
  for (std::size_t w = 1; w <= 3; ++w) {
    enc.weights(w).value.fill(0.0);
    enc.bias(w).value.fill(-1.0);
  }
  enc.bias(1).value.fill(0.0);
  enc.weights(1).value(0, 0) = 0.7;  // filter 0 fires on army
  enc.weights(1).value(1, 1) = 0.3;  // filter 3 fires on battle
  const auto t = topic_activations({army, battle, chair}, enc, vocab, lex);
  const std::size_t war = *lex.topic_index("war");
  CHECK(t[war] == doctest::Approx(1.0));
  CHECK(t[*lex.topic_index("faith")] == 0.0);

  const auto none = topic_activations({chair}, enc, vocab, lex);
  for (double v : none) CHECK(v == 0.0);
}

TEST_CASE("topic vectors need a single-modality user model and tolerate empty text") {
  const interpret::Lexicon lex = interpret::parse_lexicon(R"({"topics": {"war": ["t1"]}})");
  corpus::Vocabulary vocab;
  for (int i = 0; i < 10; ++i) vocab.add("t" + std::to_string(i));
  model::FakeNewsModel de(testing::toy_config(model::Setup::kDE, 4, vocab.size(), 3, 0.0, 1));
  const corpus::EncodedUser silent{"u", {7, 8}, std::nullopt, {}};
  const TopicVector tv = topic_vector(silent, de, vocab, lex);
  CHECK(tv.is_zero());
  CHECK(tv.values.size() == 1);
  model::FakeNewsModel news(testing::toy_config(model::Setup::kNews, 4, vocab.size(), 3, 0.0, 1));
  CHECK_THROWS_AS(topic_vector(silent, news, vocab, lex), std::invalid_argument);

  const std::vector<TopicVector> vs = {{"a", {1.5, 0}}, {"b", {0, 0.25}}};
  const auto parsed = parse_topic_vectors_tsv(topic_vectors_tsv(vs, {"x", "y"}));
  CHECK(parsed.at("a") == std::vector<double>{1.5, 0});
  CHECK(parsed.at("b") == std::vector<double>{0, 0.25});
}

TEST_CASE("identical vectors give cosine one and orthogonal ones zero") {
  const SocialGraph g = chain(300, 4);
  std::map<std::string, std::vector<double>> same, ortho;
  for (std::size_t i = 0; i < 300; ++i) {
    same[g.id(i)] = {1.0, 2.0, 3.0};
    std::vector<double> e(300, 0.0);
    e[i] = 2.0;
    ortho[g.id(i)] = e;
  }
  const EceCurve one = ece_curve(g, same, options());
  CHECK(one.points.size() == 7);
  for (const auto& p : one.points) CHECK(p.mean_cosine == doctest::Approx(1.0));
  for (const auto& p : ece_curve(g, ortho, options()).points) CHECK(p.mean_cosine == 0.0);
}

TEST_CASE("zero vectors and external nodes are never endpoints") {
  std::vector<std::string> ids = {"a", "b", "c", "x"};
  std::vector<NodeRole> roles = {NodeRole::kDataset, NodeRole::kDataset, NodeRole::kDataset, NodeRole::kExternal};
  const SocialGraph g(ids, roles, {{0, 3}, {3, 1}, {1, 2}});
  std::map<std::string, std::vector<double>> v = {{"a", {1, 0}}, {"b", {1, 1}}, {"c", {0, 0}}, {"x", {1, 0}}};
  const EceCurve c = ece_curve(g, v, options(1));
  // Only a-b (distance 2 through the external) survives.
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0].distance == 2);
  CHECK(c.points[0].pairs == 1);
  CHECK(c.points[0].mean_cosine == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK_THROWS_WITH(ece_curve(g, v, options(5)), "graph too sparse");
}

TEST_CASE("planted fixture yields a strictly decreasing curve and a positive verdict") {
  const testing::PlantedEcho echo = testing::planted_echo();
  const EceCurve c = ece_curve(echo.graph, echo.vectors, options());
  REQUIRE(c.points.size() == 7);
  for (std::size_t k = 1; k < c.points.size(); ++k) CHECK(c.points[k].mean_cosine < c.points[k - 1].mean_cosine);
  const EceAssessment a = ece_assess(c);
  CHECK(a.detected);
  CHECK(a.spearman.rho <= -0.9);
  CHECK(a.spearman.p_value < 0.005);

  const EceCurve control = ece_curve(echo.graph, testing::shuffled_vectors(echo.vectors, 3), options());
  CHECK_FALSE(ece_assess(control).detected);
}

TEST_CASE("curve is invariant to global scaling and sampling is seeded") {
  const testing::PlantedEcho echo = testing::planted_echo(600, 4, 2);
  auto scaled = echo.vectors;
  for (auto& [id, v] : scaled)
    for (double& x : v) x *= 3.0;
  const EceCurve a = ece_curve(echo.graph, echo.vectors, options());
  const EceCurve b = ece_curve(echo.graph, scaled, options());
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k)
    CHECK(a.points[k].mean_cosine == doctest::Approx(b.points[k].mean_cosine).epsilon(1e-12));

  EceOptions capped = options();
  capped.pair_cap = 500;
  const EceCurve s1 = ece_curve(echo.graph, echo.vectors, capped);
  const EceCurve s2 = ece_curve(echo.graph, echo.vectors, capped);
  CHECK(curve_csv(s1) == curve_csv(s2));
  for (const auto& p : s1.points) CHECK(p.sample.size() < p.pairs);

  EceOptions serial = options();
  serial.parallel = false;
  CHECK(curve_csv(ece_curve(echo.graph, echo.vectors, serial)) == curve_csv(a));
}

TEST_CASE("adding an external relay only shortens distances") {
  const SocialGraph g = chain(40, 1);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < 40; ++i) ids.push_back(g.id(i));
  ids.push_back("zz_ext");
  std::vector<NodeRole> roles(40, NodeRole::kDataset);
  roles.push_back(NodeRole::kExternal);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < 40; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(0, 40);
  edges.emplace_back(40, 20);
  const SocialGraph relayed(ids, roles, edges);
  for (std::size_t s = 0; s < 40; s += 7) {
    const auto before = bfs_distances(g, s, 100);
    const auto after = bfs_distances(relayed, s, 100);
    for (std::size_t t = 0; t < 40; ++t) CHECK(after[t] <= before[t]);
  }
}

TEST_CASE("assessment rules") {
  auto curve = [](std::vector<double> means) {
    EceCurve c;
    for (std::size_t k = 0; k < means.size(); ++k) {
      DistancePoint p;
      p.distance = static_cast<int>(k + 1);
      p.mean_cosine = means[k];
      for (int i = 0; i < 200; ++i) p.sample.push_back(means[k] + 0.01 * ((i % 5) - 2));
      p.pairs = p.sample.size();
      c.points.push_back(p);
    }
    return c;
  };
  const EceAssessment down = ece_assess(curve({0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3}));
  CHECK(down.spearman.rho == doctest::Approx(-1.0));
  CHECK(down.detected);
  CHECK(down.consecutive.size() == 3);
  const EceAssessment flat = ece_assess(curve({0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5}));
  CHECK_FALSE(flat.detected);
  CHECK_THROWS(ece_assess(curve({0.9, 0.8})));
  CHECK(assessment_json(down).find("\"ECE detected\": true") != std::string::npos);
}
