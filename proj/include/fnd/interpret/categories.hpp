#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "fnd/interpret/attribution.hpp"
#include "fnd/interpret/lexicon.hpp"

namespace fnd::interpret {

// Category names: "topic:<name>", "function:<class>", "proper-name",
// "hashtag", "emoji", "punctuation", "all-caps".
inline constexpr std::string_view kTopicPrefix = "topic:";
inline constexpr std::string_view kFunctionPrefix = "function:";

/// Every category any token of the n-gram falls in; empty when none.
std::set<std::string> categorize(std::span<const std::string> ngram, const Lexicon& lexicon);

struct CategoryScore {
  std::string category;
  double real = 0.0;
  double fake = 0.0;

  double gap() const;  // |F - R|
};

/// Sums member n-grams' R_v and F_v per category, sorted by |F - R|
/// descending (ties by name).
std::vector<CategoryScore> category_importance(std::span<const NgramAttribution> salient,
                                               const Lexicon& lexicon);

struct ReportComparison {
  std::set<std::string> shared;
  std::set<std::string> only_a;
  std::set<std::string> only_b;
};

/// Set comparison of the categories whose |F - R| exceeds `floor`.
ReportComparison compare_reports(std::span<const CategoryScore> a,
                                 std::span<const CategoryScore> b, double floor = 0.0);

/// "category,class,score" with one real and one fake row per category.
std::string category_csv(std::span<const CategoryScore> scores);

/// "ngram,occurrences,real,fake,class" where class is the side F - R leans to.
std::string salient_csv(std::span<const NgramAttribution> salient);

/// Per-n-gram attributions, salient subset and category scores.
std::string attribution_json(const AttributionResult& result,
                             std::span<const CategoryScore> scores);

}  // namespace fnd::interpret
