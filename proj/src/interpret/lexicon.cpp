#include "fnd/interpret/lexicon.hpp"

#include <json.hpp>

#include "fnd/corpus/text.hpp"
#include "fnd/util/error.hpp"
#include "fnd/util/io.hpp"

namespace fnd::interpret {
namespace {

using nlohmann::json;

std::set<std::string> word_set(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw InputError("lexicon: " + where + " must be an array of words");
  std::set<std::string> out;
  for (const json& w : arr) out.insert(corpus::to_lower(w.get<std::string>()));
  return out;
}

std::map<std::string, std::set<std::string>> word_map(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw InputError("lexicon: " + where + " must be an object");
  std::map<std::string, std::set<std::string>> out;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    out[it.key()] = word_set(it.value(), where + "." + it.key());
  }
  return out;
}

}  // namespace

std::vector<std::string> Lexicon::topic_names() const {
  std::vector<std::string> out;
  for (const auto& [name, words] : topics) out.push_back(name);
  return out;
}

std::optional<std::size_t> Lexicon::topic_index(std::string_view name) const {
  std::size_t i = 0;
  for (const auto& [topic, words] : topics) {
    if (topic == name) return i;
    ++i;
  }
  return std::nullopt;
}

std::vector<std::string> Lexicon::topics_of(std::string_view word) const {
  const std::string w = corpus::to_lower(word);
  std::vector<std::string> out;
  for (const auto& [name, words] : topics) {
    if (words.count(w)) out.push_back(name);
  }
  return out;
}

std::vector<std::string> Lexicon::function_classes_of(std::string_view word) const {
  const std::string w = corpus::to_lower(word);
  std::vector<std::string> out;
  for (const auto& [name, words] : function_words) {
    if (words.count(w)) out.push_back(name);
  }
  return out;
}

bool Lexicon::is_proper_name(std::string_view word) const {
  return proper_names.count(corpus::to_lower(word)) > 0;
}

Lexicon parse_lexicon(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("lexicon: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("lexicon: expected a JSON object");
  Lexicon lex;
  try {
    if (j.contains("topics")) lex.topics = word_map(j.at("topics"), "topics");
    if (j.contains("function_words")) {
      lex.function_words = word_map(j.at("function_words"), "function_words");
    }
    if (j.contains("proper_names")) lex.proper_names = word_set(j.at("proper_names"), "proper_names");
  } catch (const json::exception& e) {
    throw InputError(std::string("lexicon: ") + e.what());
  }
  return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) { return parse_lexicon(io::read_file(path)); }

}  // namespace fnd::interpret
