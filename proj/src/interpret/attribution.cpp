#include "fnd/interpret/attribution.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "fnd/stats/stats.hpp"

namespace fnd::interpret {

std::string ngram_key(std::span<const std::string> tokens) {
  std::string key;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) key += ' ';
    key += tokens[i];
  }
  return key;
}

std::vector<RelevantNgram> extract_relevant_ngrams(const nn::ConvEncoder& encoder,
                                                   std::span<const corpus::Document> docs,
                                                   const corpus::Vocabulary& vocab) {
  std::vector<RelevantNgram> out;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const corpus::Document doc = nn::ConvEncoder::effective(docs[d]);
    const kernels::PoolResult pooled = encoder.forward(doc);
    for (std::size_t f = 0; f < encoder.num_filters(); ++f) {
      if (!(pooled.value[f] > 0.0)) continue;
      RelevantNgram r;
      r.filter = f;
      r.activation = pooled.value[f];
      r.document = d;
      const std::size_t width = nn::ConvEncoder::width_of(f);
      for (std::size_t j = 0; j < width; ++j) {
        const std::size_t pos = pooled.position[f] + j;
        r.tokens.push_back(pos < doc.size() ? vocab.token(doc[pos])
                                            : std::string(corpus::kPadTag));
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

FilterPolarity filter_polarity(const nn::Parameter& classifier_weight, std::size_t block_offset,
                               std::size_t filter) {
  const nn::Matrix& w = classifier_weight.value;
  const std::size_t row = block_offset + filter;
  if (row >= w.rows() || w.cols() != 2) {
    throw std::out_of_range("filter index " + std::to_string(filter) + " outside classifier");
  }
  return {w(row, 0), w(row, 1)};
}

std::string_view polarity_label(const FilterPolarity& p) {
  if (p.real > 0.0 && p.fake < 0.0) return "real";
  if (p.real < 0.0 && p.fake > 0.0) return "fake";
  return "mixed";
}

double NgramAttribution::gap() const { return std::fabs(real - fake); }

std::vector<NgramAttribution> score_ngrams(std::span<const RelevantNgram> relevant,
                                           const nn::Parameter& classifier_weight,
                                           std::size_t block_offset) {
  std::map<std::string, NgramAttribution> grouped;
  for (const RelevantNgram& r : relevant) {
    const FilterPolarity pol = filter_polarity(classifier_weight, block_offset, r.filter);
    std::string key = ngram_key(r.tokens);
    NgramAttribution& a = grouped[key];
    if (a.occurrences == 0) {
      a.ngram = std::move(key);
      a.tokens = r.tokens;
    }
    a.real += r.activation * pol.real;
    a.fake += r.activation * pol.fake;
    ++a.occurrences;
  }
  std::vector<NgramAttribution> out;
  out.reserve(grouped.size());
  for (auto& [key, a] : grouped) out.push_back(std::move(a));
  return out;
}

std::vector<NgramAttribution> select_salient(std::span<const NgramAttribution> attributions) {
  if (attributions.size() < 2) {
    throw std::invalid_argument("select_salient needs at least two attributions");
  }
  std::vector<double> gaps;
  gaps.reserve(attributions.size());
  for (const NgramAttribution& a : attributions) gaps.push_back(a.gap());
  const stats::MeanStd ms = stats::mean_std(gaps);
  const double threshold = ms.mean + ms.std;
  std::vector<NgramAttribution> out;
  for (const NgramAttribution& a : attributions) {
    if (a.gap() > threshold) out.push_back(a);
  }
  return out;
}

Modality analyzed_modality(model::Setup setup) {
  if (model::modality_count(setup) != 1) {
    throw std::invalid_argument("attribution is defined for single-modality setups only, not " +
                                std::string(model::setup_name(setup)));
  }
  return model::uses_news(setup) ? Modality::kNews : Modality::kUsers;
}

std::vector<corpus::Document> analysis_documents(std::span<const model::Instance> instances,
                                                 Modality modality) {
  std::vector<corpus::Document> docs;
  for (const model::Instance& inst : instances) {
    if (modality == Modality::kNews) {
      if (inst.news) docs.push_back(*inst.news);
    } else {
      docs.insert(docs.end(), inst.users.begin(), inst.users.end());
    }
  }
  return docs;
}

AttributionResult attribute(const model::FakeNewsModel& model,
                            std::span<const model::Instance> instances,
                            const corpus::Vocabulary& vocab) {
  const Modality modality = analyzed_modality(model.config().setup);
  const nn::ConvEncoder& encoder =
      modality == Modality::kNews ? model.news_encoder() : model.user_encoder();
  const std::size_t offset =
      modality == Modality::kNews ? model.news_block_offset() : model.user_block_offset();

  AttributionResult result;
  const auto docs = analysis_documents(instances, modality);
  result.relevant = extract_relevant_ngrams(encoder, docs, vocab);
  result.scored = score_ngrams(result.relevant, model.classifier_weight(), offset);
  if (result.scored.size() >= 2) result.salient = select_salient(result.scored);
  return result;
}

}  // namespace fnd::interpret
