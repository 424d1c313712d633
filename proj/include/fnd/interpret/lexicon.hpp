#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fnd::interpret {

// Topic word lists, function-word classes and proper names. Words are stored
// lowercased; lookups lowercase their argument.
//
// File format (JSON):
//   {"topics": {"war": ["army", ...]}, "function_words": {"pronoun": [...]},
//    "proper_names": ["trump", ...]}
struct Lexicon {
  std::map<std::string, std::set<std::string>> topics;
  std::map<std::string, std::set<std::string>> function_words;
  std::set<std::string> proper_names;

  /// Topic names in index order (sorted).
  std::vector<std::string> topic_names() const;
  std::optional<std::size_t> topic_index(std::string_view name) const;

  std::vector<std::string> topics_of(std::string_view word) const;
  std::vector<std::string> function_classes_of(std::string_view word) const;
  bool is_proper_name(std::string_view word) const;
};

/// Throws InputError on malformed JSON or schema.
Lexicon parse_lexicon(std::string_view json_text);
Lexicon load_lexicon(const std::filesystem::path& path);

}  // namespace fnd::interpret
