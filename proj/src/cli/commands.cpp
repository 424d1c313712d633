#include "fnd/cli/commands.hpp"

#include <chrono>
#include <json.hpp>
#include <ostream>

#include "fnd/cli/config.hpp"
#include "fnd/cli/manifest.hpp"
#include "fnd/corpus/dataset.hpp"
#include "fnd/echograph/ece.hpp"
#include "fnd/echograph/graph.hpp"
#include "fnd/echograph/topics.hpp"
#include "fnd/harness/baseline.hpp"
#include "fnd/harness/grid.hpp"
#include "fnd/harness/metrics.hpp"
#include "fnd/harness/results.hpp"
#include "fnd/harness/train.hpp"
#include "fnd/interpret/attribution.hpp"
#include "fnd/interpret/categories.hpp"
#include "fnd/interpret/lexicon.hpp"
#include "fnd/model/checkpoint.hpp"
#include "fnd/model/instances.hpp"
#include "fnd/nn/embeddings.hpp"
#include "fnd/util/error.hpp"
#include "fnd/util/io.hpp"
#include "fnd/util/rng.hpp"

namespace fnd::cli {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

void require_flag(const fs::path& value, const char* flag) {
  if (value.empty()) throw InputError(std::string("missing required flag ") + flag);
}

model::Setup require_setup(const std::string& name) {
  if (name.empty()) throw InputError("missing required flag --setup; valid setups: " + model::valid_setup_names());
  auto setup = model::parse_setup(name);
  if (!setup) throw InputError("unknown setup \"" + name + "\"; valid setups: " + model::valid_setup_names());
  return *setup;
}

// Collects manifest entries while a command runs.
class Recorder {
 public:
  Recorder(std::string command, const Options& options, const RunConfig& config)
      : start_(std::chrono::steady_clock::now()), out_dir_(options.out) {
    manifest_.command = std::move(command);
    manifest_.config = config_text(config);
    manifest_.seeds.push_back(options.seed);
  }

  void input(const fs::path& path) {
    if (!path.empty()) manifest_.inputs[path.generic_string()] = hash_path(path);
  }

  void output(const std::string& file, const std::string& contents) {
    const fs::path path = out_dir_ / file;
    io::write_file_atomic(path, contents);
    manifest_.outputs[path.generic_string()] = io::fnv1a_hex(contents);
  }

  void produced(const fs::path& path) { manifest_.outputs[path.generic_string()] = hash_path(path); }

  void seeds(std::vector<std::uint64_t> seeds) { manifest_.seeds = std::move(seeds); }

  void finish() {
    manifest_.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    write_manifest(manifest_, out_dir_ / "manifest.json");
  }

 private:
  std::chrono::steady_clock::time_point start_;
  fs::path out_dir_;
  RunManifest manifest_;
};

struct SplitInstances {
  std::vector<model::Instance> train;
  std::vector<model::Instance> val;
  std::vector<model::Instance> test;
};

SplitInstances instances_for(const corpus::EncodedDataset& data, model::Setup setup) {
  return {model::make_instances(data, setup, data.splits.train),
          model::make_instances(data, setup, data.splits.val),
          model::make_instances(data, setup, data.splits.test)};
}

model::FakeNewsModel build_model(const corpus::EncodedDataset& data, model::Setup setup,
                                 const RunConfig& config, std::size_t filters, double dropout,
                                 std::uint64_t seed, const fs::path& embeddings) {
  model::ModelConfig mc;
  mc.setup = setup;
  mc.num_filters = filters;
  mc.dropout = dropout;
  mc.embedding_dim = config.embedding_dim;
  mc.vocab_size = data.vocab.size();
  mc.seed = seed;
  model::FakeNewsModel m(mc);
  if (!embeddings.empty()) {
    const nn::Matrix table = nn::load_embeddings(embeddings, data.vocab, seed, config.embedding_dim);
    m.news_encoder().embeddings().value = table;
    m.user_encoder().embeddings().value = table;
  }
  return m;
}

harness::ResultRow result_row(const std::string& dataset, model::Setup setup, std::uint64_t seed,
                              const harness::Metrics& m) {
  return {dataset, std::string(model::setup_name(setup)), seed, m.precision, m.recall, m.f1};
}

json metrics_json(const harness::Metrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"accuracy", m.accuracy},
          {"tp", m.tp}, {"fp", m.fp}, {"fn", m.fn}, {"tn", m.tn}};
}

void do_preprocess(const Options& o, std::ostream& out) {
  require_flag(o.data, "--data");
  require_flag(o.out, "--out");
  const RunConfig config = load_config(o.config);
  Recorder rec("preprocess", o, config);
  rec.input(o.config);

  std::vector<corpus::NewsRecord> news;
  corpus::UserMap users;
  try {
    news = corpus::load_news_jsonl(o.data / "news.jsonl");
    users = corpus::load_users_jsonl(o.data / "users.jsonl");
  } catch (const MissingArtifact& e) {
    // Raw input is user-supplied, so a missing file is an input error here.
    throw InputError(std::string("raw input not found: ") + e.path());
  }
  rec.input(o.data / "news.jsonl");
  rec.input(o.data / "users.jsonl");

  corpus::ProcessedDataset processed =
      corpus::filter_and_sample(std::move(news), users, config.max_users, o.seed);
  processed.splits = corpus::split(processed.news.size(), corpus::kDefaultRatios, o.seed);
  const std::string name = o.name.empty() ? o.data.filename().string() : o.name;
  const corpus::EncodedDataset encoded = corpus::encode_dataset(processed, config.min_count, name);
  corpus::write_processed(encoded, o.out);
  for (const char* f : {"vocab.tsv", "news.jsonl", "users.jsonl", "splits.json", "stats.json"}) {
    rec.produced(o.out / f);
  }
  rec.finish();
  out << name << ": " << encoded.stats.news << " news (" << encoded.stats.fake << " fake, "
      << encoded.stats.real << " real), " << encoded.stats.users << " users, vocab "
      << encoded.vocab.size() << "\n";
}

void do_train(const Options& o, std::ostream& out) {
  const model::Setup setup = require_setup(o.setup);
  require_flag(o.data, "--data");
  require_flag(o.out, "--out");
  const RunConfig config = load_config(o.config);
  const corpus::EncodedDataset data = corpus::read_processed(o.data);
  Recorder rec("train", o, config);
  rec.input(o.data);
  rec.input(o.config);
  rec.input(o.embeddings);

  const SplitInstances split = instances_for(data, setup);
  model::FakeNewsModel m =
      build_model(data, setup, config, config.num_filters, config.dropout, o.seed, o.embeddings);
  const harness::RunResult run =
      harness::run_experiment(m, split.train, split.val, split.test, config.train_config(o.seed));

  const harness::ResultRow row = result_row(data.name, setup, o.seed, *run.test);
  rec.output("model.ckpt", model::serialize_checkpoint(m));
  rec.output("epochs.csv", harness::epochs_csv(run));
  rec.output("results.csv", harness::results_csv(std::span(&row, 1)));
  rec.finish();
  out << data.name << " " << model::setup_name(setup) << " seed " << o.seed << ": best epoch "
      << run.best_epoch << ", val F " << io::format_double(run.best_val.f1) << ", test F "
      << io::format_double(run.test->f1) << "\n";
}

void do_grid(const Options& o, std::ostream& out) {
  const model::Setup setup = require_setup(o.setup);
  require_flag(o.data, "--data");
  require_flag(o.out, "--out");
  const RunConfig config = load_config(o.config);
  const corpus::EncodedDataset data = corpus::read_processed(o.data);
  Recorder rec("grid", o, config);
  rec.input(o.data);
  rec.input(o.config);
  rec.input(o.embeddings);

  const SplitInstances split = instances_for(data, setup);
  const harness::GridResult grid = harness::grid_search(config.grid_spec(), [&](const harness::GridCell& cell) {
    model::FakeNewsModel m =
        build_model(data, setup, config, cell.num_filters, cell.dropout, o.seed, o.embeddings);
    return harness::train(m, split.train, split.val, config.train_config(o.seed));
  });
  const harness::GridCell best = grid.best_entry().cell;

  std::vector<harness::ResultRow> rows;
  std::string checkpoint;
  const harness::SeedSummary summary =
      harness::multi_seed_eval(config.seeds, o.seed, [&](std::uint64_t seed) {
        model::FakeNewsModel m =
            build_model(data, setup, config, best.num_filters, best.dropout, seed, o.embeddings);
        const harness::RunResult run = harness::run_experiment(m, split.train, split.val, split.test,
                                                               config.train_config(seed));
        if (checkpoint.empty()) checkpoint = model::serialize_checkpoint(m);
        rows.push_back(result_row(data.name, setup, seed, *run.test));
        return run.test->f1;
      });
  rec.seeds(summary.seeds);

  json selection = {{"num_filters", best.num_filters},
                    {"dropout", best.dropout},
                    {"val_f1", grid.best_entry().run.best_val.f1},
                    {"test_f1_mean", summary.mean},
                    {"test_f1_std", summary.std}};
  rec.output("grid.csv", harness::grid_csv(grid));
  rec.output("best.json", selection.dump(2) + "\n");
  rec.output("results.csv", harness::results_csv(rows));
  rec.output("model.ckpt", checkpoint);
  rec.finish();
  out << data.name << " " << model::setup_name(setup) << ": d=" << best.num_filters
      << " dropout=" << io::format_double(best.dropout) << ", test F "
      << io::format_double(summary.mean) << " ± " << io::format_double(summary.std) << "\n";
}

void do_eval(const Options& o, std::ostream& out) {
  require_flag(o.data, "--data");
  require_flag(o.model, "--model");
  require_flag(o.out, "--out");
  const RunConfig config = load_config(o.config);
  const model::FakeNewsModel m = model::load_checkpoint(o.model);
  const corpus::EncodedDataset data = corpus::read_processed(o.data);
  if (m.config().vocab_size != data.vocab.size()) {
    throw InputError("checkpoint vocabulary size " + std::to_string(m.config().vocab_size) +
                     " does not match dataset vocabulary size " + std::to_string(data.vocab.size()));
  }
  Recorder rec("eval", o, config);
  rec.input(o.data);
  rec.input(o.model);

  const model::Setup setup = m.config().setup;
  const SplitInstances split = instances_for(data, setup);
  const harness::Metrics val = harness::evaluate(m, split.val);
  const harness::Metrics test = harness::evaluate(m, split.test);
  const harness::ResultRow row = result_row(data.name, setup, m.config().seed, test);
  json metrics = {{"setup", model::setup_name(setup)}, {"val", metrics_json(val)}, {"test", metrics_json(test)}};
  rec.output("metrics.json", metrics.dump(2) + "\n");
  rec.output("results.csv", harness::results_csv(std::span(&row, 1)));
  rec.finish();
  out << data.name << " " << model::setup_name(setup) << ": test F " << io::format_double(test.f1) << "\n";
}

void do_baseline(const Options& o, std::ostream& out) {
  require_flag(o.data, "--data");
  require_flag(o.out, "--out");
  const RunConfig config = load_config(o.config);
  const corpus::EncodedDataset data = corpus::read_processed(o.data);
  Recorder rec("baseline", o, config);
  rec.input(o.data);
  rec.input(o.config);

  auto labels = [&](const std::vector<std::size_t>& idx) {
    std::vector<corpus::Label> out_labels;
    for (std::size_t i : idx) out_labels.push_back(data.news.at(i).label);
    return out_labels;
  };
  const auto train_labels = labels(data.splits.train);
  const auto test_labels = labels(data.splits.test);
  const harness::BaselineResult r =
      harness::frequency_random_baseline(train_labels, test_labels, config.baseline_trials, o.seed);
  json j = {{"dataset", data.name}, {"trials", config.baseline_trials}, {"fake_rate", r.fake_rate},
            {"mean_f1", r.mean_f1}, {"std_f1", r.std_f1}};
  rec.output("baseline.json", j.dump(2) + "\n");
  rec.finish();
  out << data.name << ": frequency-random F " << io::format_double(r.mean_f1) << "\n";
}

void do_interpret(const Options& o, std::ostream& out) {
  require_flag(o.data, "--data");
  require_flag(o.model, "--model");
  require_flag(o.lexicon, "--lexicon");
  require_flag(o.out, "--out");
  const RunConfig config = load_config(o.config);
  const model::FakeNewsModel m = model::load_checkpoint(o.model);
  const interpret::Lexicon lexicon = interpret::load_lexicon(o.lexicon);
  const corpus::EncodedDataset data = corpus::read_processed(o.data);
  Recorder rec("interpret", o, config);
  rec.input(o.data);
  rec.input(o.model);
  rec.input(o.lexicon);

  // Attribution reads the models as used at test time.
  const auto instances = model::make_instances(data, m.config().setup, data.splits.test);
  const interpret::AttributionResult result = interpret::attribute(m, instances, data.vocab);
  const auto scores = interpret::category_importance(result.salient, lexicon);

  rec.output("categories.csv", interpret::category_csv(scores));
  rec.output("salient.csv", interpret::salient_csv(result.salient));
  rec.output("attribution.json", interpret::attribution_json(result, scores));
  rec.finish();
  out << data.name << " " << model::setup_name(m.config().setup) << ": " << result.scored.size()
      << " n-grams, " << result.salient.size() << " salient, " << scores.size() << " categories\n";
}

void do_echo(const Options& o, std::ostream& out) {
  require_flag(o.data, "--data");
  require_flag(o.out, "--out");
  if (o.vectors.empty() && o.model.empty()) {
    throw InputError("echo needs --vectors or --model (with --lexicon)");
  }
  const RunConfig config = load_config(o.config);
  Recorder rec("echo", o, config);
  rec.input(o.data / "users.jsonl");
  rec.input(o.config);

  const auto users = corpus::read_processed_users(o.data);
  std::vector<echograph::RetweetSource> sources;
  sources.reserve(users.size());
  for (const auto& [id, user] : users) sources.push_back({id, user.retweets});
  const echograph::SocialGraph graph = echograph::build_graph(sources, config.external_threshold);

  std::map<std::string, std::vector<double>> vectors;
  if (!o.vectors.empty()) {
    vectors = echograph::parse_topic_vectors_tsv(io::read_file(o.vectors));
    rec.input(o.vectors);
  } else {
    require_flag(o.lexicon, "--lexicon");
    const model::FakeNewsModel m = model::load_checkpoint(o.model);
    const interpret::Lexicon lexicon = interpret::load_lexicon(o.lexicon);
    const corpus::Vocabulary vocab = corpus::Vocabulary::from_tsv(io::read_file(o.data / "vocab.tsv"));
    rec.input(o.model);
    rec.input(o.lexicon);
    std::vector<echograph::TopicVector> computed;
    for (const auto& [id, user] : users) {
      computed.push_back(echograph::topic_vector(user, m, vocab, lexicon));
      vectors[id] = computed.back().values;
    }
    rec.output("vectors.tsv", echograph::topic_vectors_tsv(computed, lexicon.topic_names()));
  }

  const echograph::EceCurve curve = echograph::ece_curve(graph, vectors, config.ece_options(o.seed));
  const echograph::EceAssessment verdict = echograph::ece_assess(curve);
  rec.output("graph.tsv", graph.edge_list_tsv());
  rec.output("curve.csv", echograph::curve_csv(curve));
  rec.output("assessment.json", echograph::assessment_json(verdict));
  rec.finish();
  out << graph.node_count() << " nodes, " << graph.edge_count() << " edges, " << curve.points.size()
      << " distances; ECE detected: " << (verdict.detected ? "true" : "false") << "\n";
}

void do_report(const Options& o, std::ostream& out) {
  require_flag(o.out, "--out");
  if (o.inputs.empty()) throw InputError("report needs at least one results CSV");
  const RunConfig config = load_config(o.config);
  Recorder rec("report", o, config);
  std::vector<harness::ResultRow> rows;
  for (const fs::path& p : o.inputs) {
    const auto parsed = harness::parse_results_csv(io::read_file(p));
    rows.insert(rows.end(), parsed.begin(), parsed.end());
    rec.input(p);
  }
  rec.output("results.csv", harness::results_csv(rows));
  rec.output("summary.csv", harness::summary_csv(rows));
  rec.output("table.csv", harness::table_csv(rows));
  rec.finish();
  out << rows.size() << " rows merged from " << o.inputs.size() << " files\n";
}

int run(void (*body)(const Options&, std::ostream&), const Options& o, std::ostream& out,
        std::ostream& err) {
  return guarded([&] { body(o, out); }, err);
}

}  // namespace

int guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return kExitOk;
  } catch (const MissingArtifact& e) {
    err << "error: " << e.what() << "\n";
    return kExitMissing;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_preprocess(const Options& o, std::ostream& out, std::ostream& err) { return run(do_preprocess, o, out, err); }
int cmd_train(const Options& o, std::ostream& out, std::ostream& err) { return run(do_train, o, out, err); }
int cmd_grid(const Options& o, std::ostream& out, std::ostream& err) { return run(do_grid, o, out, err); }
int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) { return run(do_eval, o, out, err); }
int cmd_baseline(const Options& o, std::ostream& out, std::ostream& err) { return run(do_baseline, o, out, err); }
int cmd_interpret(const Options& o, std::ostream& out, std::ostream& err) { return run(do_interpret, o, out, err); }
int cmd_echo(const Options& o, std::ostream& out, std::ostream& err) { return run(do_echo, o, out, err); }
int cmd_report(const Options& o, std::ostream& out, std::ostream& err) { return run(do_report, o, out, err); }

}  // namespace fnd::cli
