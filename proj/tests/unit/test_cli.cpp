#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "fnd/cli/commands.hpp"
#include "fnd/cli/config.hpp"
#include "fnd/echograph/topics.hpp"
#include "fnd/harness/results.hpp"
#include "fnd/util/error.hpp"
#include "fnd/util/io.hpp"

using namespace fnd;
using namespace fnd::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(int (*cmd)(const Options&, std::ostream&, std::ostream&), const Options& o) {
  std::ostringstream out, err;
  const int code = cmd(o, out, err);
  return {code, out.str(), err.str()};
}

const char* kFastConfig =
    "# small and quick\n"
    "num_filters = 6\n"
    "embedding_dim = 12\n"
    "max_epochs = 3\n"
    "min_count = 10\n"
    "grid_filters = 3,6\n"
    "grid_dropouts = 0,0.4\n"
    "seeds = 2\n"
    "baseline_trials = 200\n";

// Raw fixture -> processed dataset, shared by the command tests.
struct Workspace {
  fs::path root = testing::scratch_dir("cli");
  fs::path raw = root / "raw";
  fs::path data = root / "data";
  fs::path config = root / "fast.conf";

  Workspace() {
    testing::write_raw_corpus(raw);
    io::write_file_atomic(config, kFastConfig);
    Options o;
    o.data = raw;
    o.out = data;
    o.config = config;
    o.seed = 3;
    REQUIRE(run(cmd_preprocess, o).code == kExitOk);
  }

  Options options(const std::string& out) const {
    Options o;
    o.data = data;
    o.config = config;
    o.out = root / out;
    o.seed = 5;
    return o;
  }
};

const Workspace& workspace() {
  static const Workspace ws;
  return ws;
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig defaults = parse_config("");
  CHECK(defaults.batch_size == 8);
  CHECK(defaults.learning_rate == 0.001);
  CHECK(defaults.patience == 10);
  CHECK(defaults.max_users == 50);
  CHECK(defaults.grid_filters == std::vector<std::size_t>{10, 20, 40});
  CHECK(parse_config(config_text(defaults)).grid_dropouts == defaults.grid_dropouts);
  const RunConfig c = parse_config("dropout = 0.4  # comment\n\ngrid_filters = 1, 2\n");
  CHECK(c.dropout == 0.4);
  CHECK(c.grid_filters == std::vector<std::size_t>{1, 2});
  CHECK_THROWS_AS(parse_config("nope = 1\n"), InputError);
  CHECK_THROWS_AS(parse_config("patience = ten\n"), InputError);
  CHECK_THROWS_AS(parse_config("max_users = -3\n"), InputError);
  CHECK_THROWS_AS(parse_config("just words\n"), InputError);
}

TEST_CASE("preprocess writes counts that match the fixture and is reproducible") {
  const Workspace& ws = workspace();
  const auto stats = nlohmann::json::parse(io::read_file(ws.data / "stats.json"));
  CHECK(stats["news"] == 30);
  CHECK(stats["fake"] == 10);
  CHECK(stats["real"] == 20);
  CHECK(fs::exists(ws.data / "manifest.json"));

  Options again;
  again.data = ws.raw;
  again.out = ws.root / "data_again";
  again.config = ws.config;
  again.seed = 3;
  REQUIRE(run(cmd_preprocess, again).code == kExitOk);
  for (const char* f : {"vocab.tsv", "news.jsonl", "users.jsonl", "splits.json", "stats.json"}) {
    CHECK(io::read_file(ws.data / f) == io::read_file(again.out / f));
  }
}

TEST_CASE("preprocess input errors exit 2") {
  const Workspace& ws = workspace();
  Options o;
  o.data = ws.root / "no_such_dir";
  o.out = ws.root / "x";
  const Run missing = run(cmd_preprocess, o);
  CHECK(missing.code == kExitInput);
  CHECK(missing.err.find("news.jsonl") != std::string::npos);

  const fs::path bad = ws.root / "bad_raw";
  fs::create_directories(bad);
  io::write_file_atomic(bad / "news.jsonl", "{\"id\": 1}\n");
  io::write_file_atomic(bad / "users.jsonl", "");
  o.data = bad;
  const Run malformed = run(cmd_preprocess, o);
  CHECK(malformed.code == kExitInput);
  CHECK(malformed.err.find(":1") != std::string::npos);

  o.data = ws.raw;
  o.config = ws.root / "absent.conf";
  CHECK(run(cmd_preprocess, o).code == kExitMissing);
}

TEST_CASE("train accepts paper setups, rejects others and is reproducible") {
  const Workspace& ws = workspace();
  Options o = ws.options("train_a");
  o.setup = "NEWS+TL";
  const Run bad = run(cmd_train, o);
  CHECK(bad.code == kExitInput);
  CHECK(bad.err.find("News, TL, DE, TL+DE, N+TL, N+DE, N+TL+DE") != std::string::npos);

  o.setup = "N+TL";
  REQUIRE(run(cmd_train, o).code == kExitOk);
  Options again = ws.options("train_b");
  again.setup = "N+TL";
  REQUIRE(run(cmd_train, again).code == kExitOk);
  for (const char* f : {"results.csv", "epochs.csv", "model.ckpt"}) {
    CHECK(io::read_file(o.out / f) == io::read_file(again.out / f));
  }
  const auto rows = harness::parse_results_csv(io::read_file(o.out / "results.csv"));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].setup == "N+TL");
  CHECK(rows[0].seed == 5);
  const auto manifest = nlohmann::json::parse(io::read_file(o.out / "manifest.json"));
  CHECK(manifest["command"] == "train");
  CHECK(manifest["outputs"].size() == 3);
  CHECK(manifest["inputs"].size() >= 2);

  Options missing = ws.options("train_c");
  missing.setup = "News";
  missing.data = ws.root / "no_data";
  CHECK(run(cmd_train, missing).code == kExitMissing);
}

TEST_CASE("eval, baseline and interpret run on a trained checkpoint") {
  const Workspace& ws = workspace();
  Options t = ws.options("train_news");
  t.setup = "News";
  REQUIRE(run(cmd_train, t).code == kExitOk);

  Options e = ws.options("eval_news");
  e.model = t.out / "model.ckpt";
  REQUIRE(run(cmd_eval, e).code == kExitOk);
  CHECK(io::read_file(e.out / "results.csv") == io::read_file(t.out / "results.csv"));

  Options b = ws.options("baseline");
  REQUIRE(run(cmd_baseline, b).code == kExitOk);
  const auto base = nlohmann::json::parse(io::read_file(b.out / "baseline.json"));
  CHECK(base["trials"] == 200);

  Options i = ws.options("interpret_news");
  i.model = t.out / "model.ckpt";
  i.lexicon = fs::path(FND_SOURCE_DIR) / "data" / "lexicon_demo.json";
  const Run ok = run(cmd_interpret, i);
  CHECK(ok.code == kExitOk);
  CHECK(fs::exists(i.out / "categories.csv"));
  CHECK(fs::exists(i.out / "attribution.json"));
  Options again = i;
  again.out = ws.root / "interpret_news_again";
  REQUIRE(run(cmd_interpret, again).code == kExitOk);
  CHECK(io::read_file(i.out / "attribution.json") == io::read_file(again.out / "attribution.json"));

  i.model = ws.root / "nothing.ckpt";
  const Run missing = run(cmd_interpret, i);
  CHECK(missing.code == kExitMissing);
  CHECK(missing.err.find("nothing.ckpt") != std::string::npos);
}

TEST_CASE("grid selects a cell and writes one result row per seed") {
  const Workspace& ws = workspace();
  Options g = ws.options("grid");
  g.setup = "DE";
  REQUIRE(run(cmd_grid, g).code == kExitOk);
  const auto rows = harness::parse_results_csv(io::read_file(g.out / "results.csv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].seed == 5);
  CHECK(rows[1].seed == 6);
  const std::string grid = io::read_file(g.out / "grid.csv");
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 5);
}

TEST_CASE("report merges runs") {
  const Workspace& ws = workspace();
  Options a = ws.options("rep_a");
  a.setup = "TL";
  REQUIRE(run(cmd_train, a).code == kExitOk);
  Options b = ws.options("rep_b");
  b.setup = "TL";
  b.seed = 6;
  REQUIRE(run(cmd_train, b).code == kExitOk);
  Options r = ws.options("report");
  r.inputs = {a.out / "results.csv", b.out / "results.csv"};
  REQUIRE(run(cmd_report, r).code == kExitOk);
  CHECK(harness::parse_results_csv(io::read_file(r.out / "results.csv")).size() == 2);
  const std::string table = io::read_file(r.out / "table.csv");
  CHECK(std::count(table.begin(), table.end(), '\n') == 2);

  r.inputs.push_back(ws.root / "none.csv");
  CHECK(run(cmd_report, r).code == kExitMissing);
}

TEST_CASE("echo detects the planted fixture and is reproducible") {
  const fs::path dir = testing::scratch_dir("cli_echo");
  const testing::PlantedEcho echo = testing::planted_echo();
  testing::write_planted_users(echo, dir);
  std::vector<echograph::TopicVector> vs;
  for (const auto& [id, v] : echo.vectors) vs.push_back({id, v});
  std::vector<std::string> names;
  for (std::size_t k = 0; k < vs.front().values.size(); ++k) names.push_back("t" + std::to_string(k));
  io::write_file_atomic(dir / "vectors.tsv", echograph::topic_vectors_tsv(vs, names));

  Options o;
  o.data = dir;
  o.vectors = dir / "vectors.tsv";
  o.out = dir / "out";
  REQUIRE(run(cmd_echo, o).code == kExitOk);
  const auto verdict = nlohmann::json::parse(io::read_file(o.out / "assessment.json"));
  CHECK(verdict["ECE detected"] == true);

  Options again = o;
  again.out = dir / "out2";
  REQUIRE(run(cmd_echo, again).code == kExitOk);
  for (const char* f : {"graph.tsv", "curve.csv", "assessment.json"}) {
    CHECK(io::read_file(o.out / f) == io::read_file(again.out / f));
  }

  Options none = o;
  none.vectors.clear();
  CHECK(run(cmd_echo, none).code == kExitInput);
}

TEST_CASE("echo computes topic vectors from a TL checkpoint") {
  const Workspace& ws = workspace();
  Options t = ws.options("train_tl");
  t.setup = "TL";
  REQUIRE(run(cmd_train, t).code == kExitOk);
  Options e = ws.options("echo_tl");
  e.model = t.out / "model.ckpt";
  e.lexicon = fs::path(FND_SOURCE_DIR) / "data" / "lexicon_demo.json";
  const Run r = run(cmd_echo, e);
  REQUIRE(r.code == kExitOk);
  CHECK(fs::exists(e.out / "vectors.tsv"));
  // Spreaders of unrelated news carry no planted structure.
  const auto verdict = nlohmann::json::parse(io::read_file(e.out / "assessment.json"));
  CHECK(verdict["ECE detected"] == false);

  Options sparse = e;
  sparse.out = ws.root / "echo_sparse";
  const fs::path conf = ws.root / "sparse.conf";
  io::write_file_atomic(conf, std::string(kFastConfig) + "min_pairs = 100000\n");
  sparse.config = conf;
  const Run r2 = run(cmd_echo, sparse);
  CHECK(r2.code == 1);
  CHECK(r2.err.find("graph too sparse") != std::string::npos);
}
