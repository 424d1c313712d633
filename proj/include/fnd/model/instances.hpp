#pragma once

#include <span>
#include <vector>

#include "fnd/corpus/dataset.hpp"
#include "fnd/model/model.hpp"

namespace fnd::model {

/// title <SEP> body
corpus::Document news_document(const corpus::EncodedNews& news);

/// TL: timeline. DE: description, or a single <PAD> when the user has none.
/// TL+DE: timeline <SEP> description (timeline alone without a description).
corpus::Document user_document(const corpus::EncodedUser& user, Setup setup);

std::vector<Instance> make_instances(const corpus::EncodedDataset& data, Setup setup,
                                     std::span<const std::size_t> indices);

}  // namespace fnd::model
