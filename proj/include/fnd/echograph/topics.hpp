#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fnd/corpus/dataset.hpp"
#include "fnd/interpret/lexicon.hpp"
#include "fnd/model/model.hpp"

namespace fnd::echograph {

/// Per-user topic activations, indexed like Lexicon::topic_names().
struct TopicVector {
  std::string user_id;
  std::vector<double> values;

  bool is_zero() const;
};

/// t_i = Σ v over the document's relevant n-grams that touch topic i; class
/// polarity and style categories are ignored.
std::vector<double> topic_activations(const corpus::Document& doc, const nn::ConvEncoder& encoder,
                                      const corpus::Vocabulary& vocab,
                                      const interpret::Lexicon& lexicon);

/// Uses the timeline for TL models and the description for DE models. A
/// user without that text gets the zero vector. Throws std::invalid_argument
/// for any other setup.
TopicVector topic_vector(const corpus::EncodedUser& user, const model::FakeNewsModel& model,
                         const corpus::Vocabulary& vocab, const interpret::Lexicon& lexicon);

/// "user_id<TAB>v1<TAB>...<TAB>vk" per line, preceded by a "#topics" header
/// line listing topic names.
std::string topic_vectors_tsv(const std::vector<TopicVector>& vectors,
                              const std::vector<std::string>& topic_names);
std::map<std::string, std::vector<double>> parse_topic_vectors_tsv(std::string_view text);

}  // namespace fnd::echograph
