#include "fnd/harness/results.hpp"

#include <map>
#include <sstream>

#include "fnd/model/setup.hpp"
#include "fnd/stats/stats.hpp"
#include "fnd/util/error.hpp"
#include "fnd/util/io.hpp"

namespace fnd::harness {
namespace {

using io::format_double;

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.emplace_back(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("results line " + std::to_string(line_no) + ": bad number \"" + s + "\"");
  }
}

}  // namespace

std::string results_csv(std::span<const ResultRow> rows) {
  std::string out = "dataset,setup,seed,precision,recall,f1\n";
  for (const ResultRow& r : rows) {
    out += r.dataset + "," + r.setup + "," + std::to_string(r.seed) + "," +
           format_double(r.precision) + "," + format_double(r.recall) + "," +
           format_double(r.f1) + "\n";
  }
  return out;
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != "dataset,setup,seed,precision,recall,f1") {
        throw InputError("results: unexpected header \"" + line + "\"");
      }
      continue;
    }
    const auto cols = split_csv_line(line);
    if (cols.size() != 6) {
      throw InputError("results line " + std::to_string(line_no) + ": expected 6 columns");
    }
    ResultRow r;
    r.dataset = cols[0];
    r.setup = cols[1];
    r.seed = static_cast<std::uint64_t>(parse_double(cols[2], line_no));
    r.precision = parse_double(cols[3], line_no);
    r.recall = parse_double(cols[4], line_no);
    r.f1 = parse_double(cols[5], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string epochs_csv(const RunResult& run) {
  std::string out = "epoch,train_loss,val_precision,val_recall,val_f1,best\n";
  for (const EpochRecord& e : run.epochs) {
    out += std::to_string(e.epoch) + "," + format_double(e.train_loss) + "," +
           format_double(e.val.precision) + "," + format_double(e.val.recall) + "," +
           format_double(e.val.f1) + "," + (e.epoch == run.best_epoch ? "1" : "0") + "\n";
  }
  return out;
}

std::string grid_csv(const GridResult& grid) {
  std::string out = "num_filters,dropout,best_epoch,val_f1,selected\n";
  for (std::size_t i = 0; i < grid.entries.size(); ++i) {
    const GridEntry& e = grid.entries[i];
    out += std::to_string(e.cell.num_filters) + "," + format_double(e.cell.dropout) + "," +
           std::to_string(e.run.best_epoch) + "," + format_double(e.run.best_val.f1) + "," +
           (i == grid.best ? "1" : "0") + "\n";
  }
  return out;
}

namespace {

std::map<std::pair<std::string, std::string>, std::vector<double>> group(
    std::span<const ResultRow> rows) {
  std::map<std::pair<std::string, std::string>, std::vector<double>> g;
  for (const ResultRow& r : rows) g[{r.dataset, r.setup}].push_back(r.f1);
  return g;
}

}  // namespace

std::string summary_csv(std::span<const ResultRow> rows) {
  std::string out = "dataset,setup,runs,mean_f1,std_f1\n";
  for (const auto& [key, values] : group(rows)) {
    const stats::MeanStd ms = stats::mean_std(values);
    out += key.first + "," + key.second + "," + std::to_string(values.size()) + "," +
           format_double(ms.mean) + "," + format_double(ms.std) + "\n";
  }
  return out;
}

std::string table_csv(std::span<const ResultRow> rows) {
  const auto g = group(rows);
  std::string out = "dataset";
  for (model::Setup s : model::kAllSetups) out += "," + std::string(model::setup_name(s));
  out += "\n";
  std::map<std::string, bool> datasets;
  for (const ResultRow& r : rows) datasets[r.dataset] = true;
  for (const auto& [dataset, unused] : datasets) {
    out += dataset;
    for (model::Setup s : model::kAllSetups) {
      out += ",";
      auto it = g.find({dataset, std::string(model::setup_name(s))});
      if (it != g.end()) out += format_double(stats::mean_std(it->second).mean);
    }
    out += "\n";
  }
  return out;
}

}  // namespace fnd::harness
