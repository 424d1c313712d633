#include "fnd/interpret/categories.hpp"

#include <algorithm>
#include <iterator>
#include <cmath>
#include <json.hpp>
#include <map>

#include "fnd/corpus/text.hpp"
#include "fnd/util/io.hpp"

namespace fnd::interpret {

std::set<std::string> categorize(std::span<const std::string> ngram, const Lexicon& lexicon) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < ngram.size(); ++i) {
    const std::string& tok = ngram[i];
    const bool after_cap = i > 0 && ngram[i - 1] == corpus::kCapTag;
    const bool after_emoji = i > 0 && ngram[i - 1] == corpus::kEmojiTag;
    if (tok == corpus::kCapTag || after_cap) out.insert("all-caps");
    if (tok == corpus::kEmojiTag || after_emoji || corpus::is_emoji_token(tok)) out.insert("emoji");
    if (corpus::is_special_tag(tok)) continue;
    if (tok.size() > 1 && tok[0] == '#') out.insert("hashtag");
    if (corpus::is_punctuation_token(tok)) out.insert("punctuation");
    for (const std::string& t : lexicon.topics_of(tok)) out.insert(std::string(kTopicPrefix) + t);
    for (const std::string& f : lexicon.function_classes_of(tok)) {
      out.insert(std::string(kFunctionPrefix) + f);
    }
    if (lexicon.is_proper_name(tok)) out.insert("proper-name");
  }
  return out;
}

double CategoryScore::gap() const { return std::fabs(fake - real); }

std::vector<CategoryScore> category_importance(std::span<const NgramAttribution> salient,
                                               const Lexicon& lexicon) {
  std::map<std::string, CategoryScore> sums;
  for (const NgramAttribution& a : salient) {
    for (const std::string& cat : categorize(a.tokens, lexicon)) {
      CategoryScore& s = sums[cat];
      s.category = cat;
      s.real += a.real;
      s.fake += a.fake;
    }
  }
  std::vector<CategoryScore> out;
  for (auto& [name, s] : sums) out.push_back(s);
  std::stable_sort(out.begin(), out.end(),
                   [](const CategoryScore& a, const CategoryScore& b) { return a.gap() > b.gap(); });
  return out;
}

ReportComparison compare_reports(std::span<const CategoryScore> a,
                                 std::span<const CategoryScore> b, double floor) {
  auto names = [floor](std::span<const CategoryScore> r) {
    std::set<std::string> s;
    for (const CategoryScore& c : r) {
      if (c.gap() > floor) s.insert(c.category);
    }
    return s;
  };
  const auto sa = names(a);
  const auto sb = names(b);
  ReportComparison cmp;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::inserter(cmp.shared, cmp.shared.end()));
  std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                      std::inserter(cmp.only_a, cmp.only_a.end()));
  std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(),
                      std::inserter(cmp.only_b, cmp.only_b.end()));
  return cmp;
}

namespace {

// RFC 4180 quoting for fields that may contain commas or quotes.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string category_csv(std::span<const CategoryScore> scores) {
  std::string out = "category,class,score\n";
  for (const CategoryScore& s : scores) {
    out += csv_field(s.category) + ",real," + io::format_double(s.real) + "\n";
    out += csv_field(s.category) + ",fake," + io::format_double(s.fake) + "\n";
  }
  return out;
}

std::string salient_csv(std::span<const NgramAttribution> salient) {
  std::string out = "ngram,occurrences,real,fake,class\n";
  for (const NgramAttribution& a : salient) {
    out += csv_field(a.ngram) + "," + std::to_string(a.occurrences) + "," +
           io::format_double(a.real) + "," + io::format_double(a.fake) + "," +
           (a.fake > a.real ? "fake" : "real") + "\n";
  }
  return out;
}

std::string attribution_json(const AttributionResult& result,
                             std::span<const CategoryScore> scores) {
  using nlohmann::json;
  auto ngrams = [](std::span<const NgramAttribution> list) {
    json arr = json::array();
    for (const NgramAttribution& a : list) {
      arr.push_back({{"ngram", a.ngram},
                     {"occurrences", a.occurrences},
                     {"R_v", a.real},
                     {"F_v", a.fake}});
    }
    return arr;
  };
  json j;
  j["relevant_occurrences"] = result.relevant.size();
  j["ngrams"] = ngrams(result.scored);
  j["salient"] = ngrams(result.salient);
  json cats = json::array();
  for (const CategoryScore& c : scores) {
    cats.push_back({{"category", c.category}, {"R_v", c.real}, {"F_v", c.fake}});
  }
  j["categories"] = cats;
  return j.dump(2) + "\n";
}

}  // namespace fnd::interpret
