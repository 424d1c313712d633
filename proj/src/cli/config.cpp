#include "fnd/cli/config.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "fnd/util/error.hpp"
#include "fnd/util/io.hpp"

namespace fnd::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& v) {
  std::size_t used = 0;
  T out{};
  if constexpr (std::is_floating_point_v<T>) {
    out = static_cast<T>(std::stod(v, &used));
  } else if constexpr (std::is_signed_v<T>) {
    out = static_cast<T>(std::stoll(v, &used));
  } else {
    if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
    out = static_cast<T>(std::stoull(v, &used));
  }
  if (used != v.size()) throw std::invalid_argument(v);
  return out;
}

template <class T>
std::vector<T> parse_list(const std::string& v) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(trim(item)));
  if (out.empty()) throw std::invalid_argument(v);
  return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += io::format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"min_count", [](RunConfig& c, const std::string& v) { c.min_count = parse_number<std::size_t>(v); }},
      {"max_users", [](RunConfig& c, const std::string& v) { c.max_users = parse_number<std::size_t>(v); }},
      {"num_filters", [](RunConfig& c, const std::string& v) { c.num_filters = parse_number<std::size_t>(v); }},
      {"dropout", [](RunConfig& c, const std::string& v) { c.dropout = parse_number<double>(v); }},
      {"embedding_dim", [](RunConfig& c, const std::string& v) { c.embedding_dim = parse_number<std::size_t>(v); }},
      {"batch_size", [](RunConfig& c, const std::string& v) { c.batch_size = parse_number<std::size_t>(v); }},
      {"learning_rate", [](RunConfig& c, const std::string& v) { c.learning_rate = parse_number<double>(v); }},
      {"beta1", [](RunConfig& c, const std::string& v) { c.beta1 = parse_number<double>(v); }},
      {"beta2", [](RunConfig& c, const std::string& v) { c.beta2 = parse_number<double>(v); }},
      {"epsilon", [](RunConfig& c, const std::string& v) { c.epsilon = parse_number<double>(v); }},
      {"patience", [](RunConfig& c, const std::string& v) { c.patience = parse_number<int>(v); }},
      {"max_epochs", [](RunConfig& c, const std::string& v) { c.max_epochs = parse_number<int>(v); }},
      {"grid_filters", [](RunConfig& c, const std::string& v) { c.grid_filters = parse_list<std::size_t>(v); }},
      {"grid_dropouts", [](RunConfig& c, const std::string& v) { c.grid_dropouts = parse_list<double>(v); }},
      {"seeds", [](RunConfig& c, const std::string& v) { c.seeds = parse_number<std::size_t>(v); }},
      {"baseline_trials", [](RunConfig& c, const std::string& v) { c.baseline_trials = parse_number<std::size_t>(v); }},
      {"external_threshold", [](RunConfig& c, const std::string& v) { c.external_threshold = parse_number<std::size_t>(v); }},
      {"min_pairs", [](RunConfig& c, const std::string& v) { c.min_pairs = parse_number<std::size_t>(v); }},
      {"max_distance", [](RunConfig& c, const std::string& v) { c.max_distance = parse_number<int>(v); }},
      {"pair_cap", [](RunConfig& c, const std::string& v) { c.pair_cap = parse_number<std::size_t>(v); }},
  };
  return table;
}

}  // namespace

harness::TrainConfig RunConfig::train_config(std::uint64_t seed) const {
  harness::TrainConfig t;
  t.batch_size = batch_size;
  t.adam = {learning_rate, beta1, beta2, epsilon};
  t.patience = patience;
  t.max_epochs = max_epochs;
  t.seed = seed;
  return t;
}

harness::GridSpec RunConfig::grid_spec() const { return {grid_filters, grid_dropouts}; }

echograph::EceOptions RunConfig::ece_options(std::uint64_t seed) const {
  echograph::EceOptions o;
  o.min_pairs = min_pairs;
  o.max_distance = max_distance;
  o.pair_cap = pair_cap;
  o.seed = seed;
  return o;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string::npos) throw InputError(where + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    auto it = setters().find(key);
    if (it == setters().end()) throw InputError(where + ": unknown key \"" + key + "\"");
    try {
      it->second(cfg, value);
    } catch (const std::exception&) {
      throw InputError(where + ": bad value \"" + value + "\" for " + key);
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  if (path.empty()) return {};
  return parse_config(io::read_file(path));
}

std::string config_text(const RunConfig& c) {
  std::string out;
  auto kv = [&](const char* k, const std::string& v) { out += std::string(k) + " = " + v + "\n"; };
  kv("min_count", std::to_string(c.min_count));
  kv("max_users", std::to_string(c.max_users));
  kv("num_filters", std::to_string(c.num_filters));
  kv("dropout", io::format_double(c.dropout));
  kv("embedding_dim", std::to_string(c.embedding_dim));
  kv("batch_size", std::to_string(c.batch_size));
  kv("learning_rate", io::format_double(c.learning_rate));
  kv("beta1", io::format_double(c.beta1));
  kv("beta2", io::format_double(c.beta2));
  kv("epsilon", io::format_double(c.epsilon));
  kv("patience", std::to_string(c.patience));
  kv("max_epochs", std::to_string(c.max_epochs));
  kv("grid_filters", join(c.grid_filters));
  kv("grid_dropouts", join(c.grid_dropouts));
  kv("seeds", std::to_string(c.seeds));
  kv("baseline_trials", std::to_string(c.baseline_trials));
  kv("external_threshold", std::to_string(c.external_threshold));
  kv("min_pairs", std::to_string(c.min_pairs));
  kv("max_distance", std::to_string(c.max_distance));
  kv("pair_cap", std::to_string(c.pair_cap));
  return out;
}

}  // namespace fnd::cli
