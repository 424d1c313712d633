#include "fnd/nn/conv.hpp"

#include <algorithm>
#include <cmath>

#include "fnd/nn/embeddings.hpp"

namespace fnd::nn {
namespace {

std::size_t filters_of_width(std::size_t num_filters, std::size_t width) {
  std::size_t n = 0;
  for (std::size_t f = 0; f < num_filters; ++f) n += ConvEncoder::width_of(f) == width ? 1 : 0;
  return n;
}

}  // namespace

ConvEncoder::ConvEncoder(const std::string& prefix, std::size_t vocab_size, std::size_t dim,
                         std::size_t num_filters)
    : dim_(dim),
      num_filters_(num_filters),
      embeddings_(prefix + ".embeddings", vocab_size, dim) {
  for (std::size_t w = 1; w <= kMaxFilterWidth; ++w) {
    const std::size_t count = filters_of_width(num_filters, w);
    weights_[w - 1] = Parameter(prefix + ".filters" + std::to_string(w), count, w * dim);
    biases_[w - 1] = Parameter(prefix + ".bias" + std::to_string(w), count, 1);
  }
}

void ConvEncoder::initialize(Rng& rng) {
  embeddings_.value = random_embeddings(embeddings_.value.rows(), dim_, rng);
  for (std::size_t w = 1; w <= kMaxFilterWidth; ++w) {
    Parameter& p = weights_[w - 1];
    const double bound =
        std::sqrt(6.0 / static_cast<double>(p.value.cols() + std::max<std::size_t>(1, p.value.rows())));
    for (double& x : p.value.values()) x = rng.uniform(-bound, bound);
    biases_[w - 1].value.fill(0.0);
  }
}

std::span<const double> ConvEncoder::filter_weights(std::size_t filter) const {
  return weights_[width_of(filter) - 1].value.row(slot_of(filter));
}

double ConvEncoder::filter_bias(std::size_t filter) const {
  return biases_[width_of(filter) - 1].value(slot_of(filter), 0);
}

corpus::Document ConvEncoder::effective(const corpus::Document& doc) {
  if (doc.empty()) return corpus::Document{corpus::Vocabulary::kPad};
  return doc;
}

kernels::DocumentRows ConvEncoder::rows(const corpus::Document& doc) const {
  kernels::DocumentRows out;
  out.dim = dim_;
  out.rows.reserve(doc.size());
  for (corpus::TokenId id : doc) {
    if (id == corpus::Vocabulary::kPad) {
      out.rows.push_back(nullptr);
    } else {
      out.rows.push_back(embeddings_.value.row(static_cast<std::size_t>(id)).data());
    }
  }
  return out;
}

std::vector<kernels::FilterRef> ConvEncoder::filter_refs() const {
  std::vector<kernels::FilterRef> refs(num_filters_);
  for (std::size_t f = 0; f < num_filters_; ++f) {
    refs[f] = {width_of(f), filter_weights(f), filter_bias(f)};
  }
  return refs;
}

kernels::PoolResult ConvEncoder::forward(const corpus::Document& doc) const {
  const auto refs = filter_refs();
  return kernels::conv_relu_pool(rows(effective(doc)), refs);
}

kernels::PoolResult ConvEncoder::forward_serial(const corpus::Document& doc) const {
  const auto refs = filter_refs();
  return kernels::serial::conv_relu_pool(rows(effective(doc)), refs);
}

void ConvEncoder::backward(const corpus::Document& raw_doc, const kernels::PoolResult& pooled,
                           std::span<const double> d_pooled) {
  const corpus::Document doc = effective(raw_doc);
  for (std::size_t f = 0; f < num_filters_; ++f) {
    const double g = d_pooled[f];
    if (g == 0.0 || !(pooled.pre_activation[f] > 0.0)) continue;
    const std::size_t w = width_of(f);
    const std::size_t slot = slot_of(f);
    Parameter& weights = weights_[w - 1];
    biases_[w - 1].grad(slot, 0) += g;
    auto wrow = weights.value.row(slot);
    auto grow = weights.grad.row(slot);
    for (std::size_t j = 0; j < w; ++j) {
      const std::size_t pos = pooled.position[f] + j;
      if (pos >= doc.size() || doc[pos] == corpus::Vocabulary::kPad) continue;
      const auto id = static_cast<std::size_t>(doc[pos]);
      const auto emb = embeddings_.value.row(id);
      auto emb_grad = embeddings_.grad.row(id);
      for (std::size_t k = 0; k < dim_; ++k) {
        grow[j * dim_ + k] += g * emb[k];
        emb_grad[k] += g * wrow[j * dim_ + k];
      }
    }
  }
}

void ConvEncoder::collect(std::vector<Parameter*>& out) {
  out.push_back(&embeddings_);
  for (std::size_t w = 0; w < kMaxFilterWidth; ++w) {
    out.push_back(&weights_[w]);
    out.push_back(&biases_[w]);
  }
}

void ConvEncoder::collect(std::vector<const Parameter*>& out) const {
  out.push_back(&embeddings_);
  for (std::size_t w = 0; w < kMaxFilterWidth; ++w) {
    out.push_back(&weights_[w]);
    out.push_back(&biases_[w]);
  }
}

kernels::PoolResult conv_relu_pool(const corpus::Document& doc, const ConvEncoder& encoder) {
  return encoder.forward(doc);
}

}  // namespace fnd::nn
