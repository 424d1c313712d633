#pragma once

#include <array>
#include <string>
#include <vector>

#include "fnd/corpus/vocabulary.hpp"
#include "fnd/kernels/conv.hpp"
#include "fnd/nn/parameter.hpp"
#include "fnd/util/rng.hpp"

namespace fnd::nn {

inline constexpr std::size_t kMaxFilterWidth = 3;

// Depth-1 text CNN: embedding lookup, filters of width 1..3 with ReLU, max
// pooling over time. Filter f has width 1 + f % 3, so d filters split
// round-robin across widths (10 → 4/3/3). Output coordinate f is filter f.
class ConvEncoder {
 public:
  ConvEncoder() = default;
  ConvEncoder(const std::string& prefix, std::size_t vocab_size, std::size_t dim,
              std::size_t num_filters);

  std::size_t num_filters() const { return num_filters_; }
  std::size_t dim() const { return dim_; }
  std::size_t vocab_size() const { return embeddings_.value.rows(); }

  static std::size_t width_of(std::size_t filter) { return 1 + filter % kMaxFilterWidth; }
  /// Row of filter f inside its width group.
  static std::size_t slot_of(std::size_t filter) { return filter / kMaxFilterWidth; }

  /// Glorot-uniform filters, zero biases, random embedding table.
  void initialize(Rng& rng);

  Parameter& embeddings() { return embeddings_; }
  const Parameter& embeddings() const { return embeddings_; }
  Parameter& weights(std::size_t width) { return weights_[width - 1]; }
  const Parameter& weights(std::size_t width) const { return weights_[width - 1]; }
  Parameter& bias(std::size_t width) { return biases_[width - 1]; }
  const Parameter& bias(std::size_t width) const { return biases_[width - 1]; }

  /// Filter f weights, width(f) * dim values.
  std::span<const double> filter_weights(std::size_t filter) const;
  double filter_bias(std::size_t filter) const;

  /// An empty document is treated as a single <PAD> token.
  static corpus::Document effective(const corpus::Document& doc);

  kernels::DocumentRows rows(const corpus::Document& doc) const;

  kernels::PoolResult forward(const corpus::Document& doc) const;
  kernels::PoolResult forward_serial(const corpus::Document& doc) const;

  /// Routes d_pooled to the argmax window of each filter whose pooled value
  /// is positive.
  void backward(const corpus::Document& doc, const kernels::PoolResult& pooled,
                std::span<const double> d_pooled);

  void collect(std::vector<Parameter*>& out);
  void collect(std::vector<const Parameter*>& out) const;

 private:
  std::vector<kernels::FilterRef> filter_refs() const;

  std::size_t dim_ = 0;
  std::size_t num_filters_ = 0;
  Parameter embeddings_;
  std::array<Parameter, kMaxFilterWidth> weights_;
  std::array<Parameter, kMaxFilterWidth> biases_;
};

/// Convenience wrapper used by tests and tools: conv + ReLU + max-pool of a
/// document against an encoder's current parameters.
kernels::PoolResult conv_relu_pool(const corpus::Document& doc, const ConvEncoder& encoder);

}  // namespace fnd::nn
