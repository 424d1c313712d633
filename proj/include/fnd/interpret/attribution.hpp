#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fnd/corpus/vocabulary.hpp"
#include "fnd/model/model.hpp"

namespace fnd::interpret {

/// The max-pool winning window of one filter on one document.
struct RelevantNgram {
  std::vector<std::string> tokens;  // surface tokens, length = filter width
  std::size_t filter = 0;
  double activation = 0.0;  // v > 0
  std::size_t document = 0;
};

/// Space-joined surface form used to group identical n-grams.
std::string ngram_key(std::span<const std::string> tokens);

/// Every (document, filter) winner with positive activation; windows running
/// past the end of a short document read "<PAD>".
std::vector<RelevantNgram> extract_relevant_ngrams(const nn::ConvEncoder& encoder,
                                                   std::span<const corpus::Document> docs,
                                                   const corpus::Vocabulary& vocab);

/// The two classifier weights attached to filter f of a modality block:
/// (W_f0, W_f1) = contribution to real, to fake.
struct FilterPolarity {
  double real = 0.0;
  double fake = 0.0;
};

/// Throws std::out_of_range when block_offset + filter is outside W.
FilterPolarity filter_polarity(const nn::Parameter& classifier_weight, std::size_t block_offset,
                               std::size_t filter);

/// "real" when W_f0 > 0 and W_f1 < 0, "fake" for the mirror case, else "mixed".
std::string_view polarity_label(const FilterPolarity& polarity);

struct NgramAttribution {
  std::string ngram;
  std::vector<std::string> tokens;
  double real = 0.0;  // R_v summed over occurrences
  double fake = 0.0;  // F_v summed over occurrences
  std::size_t occurrences = 0;

  double gap() const;  // |R_v - F_v|
};

/// R = v·W_f0 and F = v·W_f1 per occurrence, summed per distinct n-gram.
/// Output is ordered by n-gram key.
std::vector<NgramAttribution> score_ngrams(std::span<const RelevantNgram> relevant,
                                           const nn::Parameter& classifier_weight,
                                           std::size_t block_offset);

/// Keeps n-grams whose |R_v - F_v| exceeds mean + sample std of all gaps,
/// preserving input order. Throws std::invalid_argument for fewer than 2.
std::vector<NgramAttribution> select_salient(std::span<const NgramAttribution> attributions);

/// Which side of a single-modality model attribution reads from.
enum class Modality { kNews, kUsers };

/// News for the News setup, users for TL / DE / TL+DE. Combined setups are
/// rejected with std::invalid_argument.
Modality analyzed_modality(model::Setup setup);

/// News documents, or every user document of every instance, in order.
std::vector<corpus::Document> analysis_documents(std::span<const model::Instance> instances,
                                                 Modality modality);

struct AttributionResult {
  std::vector<RelevantNgram> relevant;
  std::vector<NgramAttribution> scored;
  std::vector<NgramAttribution> salient;
};

/// extract → score → select for a single-modality model.
AttributionResult attribute(const model::FakeNewsModel& model,
                            std::span<const model::Instance> instances,
                            const corpus::Vocabulary& vocab);

}  // namespace fnd::interpret
