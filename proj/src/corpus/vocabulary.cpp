#include "fnd/corpus/vocabulary.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include "fnd/util/error.hpp"

namespace fnd::corpus {

Vocabulary::Vocabulary() {
  for (std::string_view tag : {kPadTag, kUnkTag, kUrlTag, kIntTag, kCapTag, kEmojiTag, kSepTag}) {
    add(tag);
  }
}

TokenId Vocabulary::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(std::string_view token) const {
  return index_.count(std::string(token)) > 0;
}

const std::string& Vocabulary::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw std::out_of_range("token id out of range: " + std::to_string(id));
  }
  return tokens_[static_cast<std::size_t>(id)];
}

TokenId Vocabulary::add(std::string_view token) {
  auto [it, inserted] = index_.emplace(std::string(token), static_cast<TokenId>(tokens_.size()));
  if (inserted) tokens_.emplace_back(token);
  return it->second;
}

std::string Vocabulary::to_tsv() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out += tokens_[i];
    out += '\t';
    out += std::to_string(i);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::from_tsv(std::string_view text) {
  Vocabulary vocab;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::size_t tab = line.rfind('\t');
    if (tab == std::string_view::npos) {
      throw InputError("vocabulary line " + std::to_string(line_no) + ": missing tab");
    }
    long long id = -1;
    const std::string_view num = line.substr(tab + 1);
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), id);
    if (ec != std::errc() || p != num.data() + num.size()) {
      throw InputError("vocabulary line " + std::to_string(line_no) + ": bad id");
    }
    const TokenId got = vocab.add(line.substr(0, tab));
    if (got != id) {
      throw InputError("vocabulary line " + std::to_string(line_no) + ": ids are not dense");
    }
  }
  return vocab;
}

Vocabulary build_vocabulary(std::span<const Tokens> corpus, std::size_t min_count) {
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const Tokens& doc : corpus) {
    for (const std::string& tok : doc) {
      ++total;
      if (!is_special_tag(tok)) ++counts[tok];
    }
  }
  if (total == 0) throw InputError("empty corpus");

  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [tok, n] : counts) {
    if (n >= min_count) kept.emplace_back(tok, n);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  Vocabulary vocab;
  vocab.set_min_count(min_count);
  for (const auto& [tok, n] : kept) vocab.add(tok);
  return vocab;
}

Document encode(const Tokens& tokens, const Vocabulary& vocab) {
  Document doc;
  doc.reserve(tokens.size());
  for (const std::string& tok : tokens) doc.push_back(vocab.id(tok));
  return doc;
}

Tokens decode(const Document& doc, const Vocabulary& vocab) {
  Tokens out;
  out.reserve(doc.size());
  for (TokenId id : doc) out.push_back(vocab.token(id));
  return out;
}

}  // namespace fnd::corpus
