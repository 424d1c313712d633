#include <CLI11.hpp>
#include <iostream>

#include "fnd/cli/commands.hpp"

namespace {

using fnd::cli::Options;

void common_flags(CLI::App* app, Options& o) {
  app->add_option("--config", o.config, "key = value config file (defaults when omitted)");
  app->add_option("--seed", o.seed, "random seed")->default_val(1);
  app->add_option("--out", o.out, "output directory")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fake news detection with news and user-text CNNs"};
  app.require_subcommand(1);
  Options o;

  auto* pre = app.add_subcommand("preprocess", "filter, sample, split and encode a raw corpus");
  pre->add_option("--data", o.data, "raw directory with news.jsonl and users.jsonl")->required();
  pre->add_option("--name", o.name, "dataset name (default: directory name)");
  common_flags(pre, o);

  auto* train = app.add_subcommand("train", "train one setup and score its test split");
  train->add_option("--data", o.data, "processed dataset directory")->required();
  train->add_option("--setup", o.setup, "News, TL, DE, TL+DE, N+TL, N+DE or N+TL+DE")->required();
  train->add_option("--embeddings", o.embeddings, "GloVe text-format vectors");
  common_flags(train, o);

  auto* grid = app.add_subcommand("grid", "grid search, then multi-seed test evaluation");
  grid->add_option("--data", o.data, "processed dataset directory")->required();
  grid->add_option("--setup", o.setup, "News, TL, DE, TL+DE, N+TL, N+DE or N+TL+DE")->required();
  grid->add_option("--embeddings", o.embeddings, "GloVe text-format vectors");
  common_flags(grid, o);

  auto* eval = app.add_subcommand("eval", "score a checkpoint on the validation and test splits");
  eval->add_option("--data", o.data, "processed dataset directory")->required();
  eval->add_option("--model", o.model, "checkpoint")->required();
  common_flags(eval, o);

  auto* base = app.add_subcommand("baseline", "frequency-random baseline");
  base->add_option("--data", o.data, "processed dataset directory")->required();
  common_flags(base, o);

  auto* interp = app.add_subcommand("interpret", "n-gram attribution and category scores");
  interp->add_option("--data", o.data, "processed dataset directory")->required();
  interp->add_option("--model", o.model, "single-modality checkpoint")->required();
  interp->add_option("--lexicon", o.lexicon, "lexicon JSON")->required();
  common_flags(interp, o);

  auto* echo = app.add_subcommand("echo", "echo-chamber curve and verdict");
  echo->add_option("--data", o.data, "directory holding users.jsonl (and vocab.tsv with --model)")->required();
  echo->add_option("--vectors", o.vectors, "precomputed topic vectors TSV");
  echo->add_option("--model", o.model, "TL or DE checkpoint to compute topic vectors");
  echo->add_option("--lexicon", o.lexicon, "lexicon JSON (with --model)");
  common_flags(echo, o);

  auto* report = app.add_subcommand("report", "merge results CSVs into summary tables");
  report->add_option("inputs", o.inputs, "results.csv files")->required();
  common_flags(report, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fnd::cli::kExitInput;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*pre) return fnd::cli::cmd_preprocess(o, out, err);
  if (*train) return fnd::cli::cmd_train(o, out, err);
  if (*grid) return fnd::cli::cmd_grid(o, out, err);
  if (*eval) return fnd::cli::cmd_eval(o, out, err);
  if (*base) return fnd::cli::cmd_baseline(o, out, err);
  if (*interp) return fnd::cli::cmd_interpret(o, out, err);
  if (*echo) return fnd::cli::cmd_echo(o, out, err);
  return fnd::cli::cmd_report(o, out, err);
}
