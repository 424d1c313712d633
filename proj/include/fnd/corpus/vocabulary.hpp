#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fnd/corpus/text.hpp"

namespace fnd::corpus {

using TokenId = std::int32_t;
using Document = std::vector<TokenId>;

// Dense token ids. Special tags occupy the first ids in a fixed order.
class Vocabulary {
 public:
  static constexpr TokenId kPad = 0;
  static constexpr TokenId kUnk = 1;
  static constexpr TokenId kUrl = 2;
  static constexpr TokenId kInt = 3;
  static constexpr TokenId kCap = 4;
  static constexpr TokenId kEmoji = 5;
  static constexpr TokenId kSep = 6;
  static constexpr std::size_t kNumSpecials = 7;

  Vocabulary();

  std::size_t size() const { return tokens_.size(); }
  std::size_t min_count() const { return min_count_; }
  void set_min_count(std::size_t n) { min_count_ = n; }

  /// kUnk when absent.
  TokenId id(std::string_view token) const;
  bool contains(std::string_view token) const;
  const std::string& token(TokenId id) const;
  const std::vector<std::string>& tokens() const { return tokens_; }

  /// Appends a new token; returns its id (existing id if already present).
  TokenId add(std::string_view token);

  /// "token<TAB>id" per line, in id order.
  std::string to_tsv() const;
  static Vocabulary from_tsv(std::string_view text);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
  std::size_t min_count_ = 0;
};

/// Keeps tokens occurring at least min_count times. Ids after the specials are
/// assigned by descending count, ties by byte order. Throws on an empty corpus.
Vocabulary build_vocabulary(std::span<const Tokens> corpus, std::size_t min_count = 10);

Document encode(const Tokens& tokens, const Vocabulary& vocab);
Tokens decode(const Document& doc, const Vocabulary& vocab);

}  // namespace fnd::corpus
