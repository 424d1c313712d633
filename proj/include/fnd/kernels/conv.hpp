#pragma once

// Conv + ReLU + max-over-time kernels. The serial:: versions are the
// reference; the default versions split filters across OpenMP threads and
// must agree with the reference bit for bit.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fnd::kernels {

/// One convolution filter over `width` consecutive embedding rows.
struct FilterRef {
  std::size_t width = 1;
  std::span<const double> weights;  // width * dim, row j applies to token t+j
  double bias = 0.0;
};

/// Embedding rows of a document. A null row is a zero row (<PAD> or padding).
struct DocumentRows {
  std::vector<const double*> rows;
  std::size_t dim = 0;
};

struct PoolResult {
  std::vector<double> value;          // max_t ReLU(pre_t), one per filter
  std::vector<std::size_t> position;  // first t attaining the max
  std::vector<double> pre_activation; // pre-activation at `position`
};

/// Window count for a filter of the given width: documents shorter than the
/// width are zero-padded up to it.
inline std::size_t window_count(std::size_t doc_len, std::size_t width) {
  const std::size_t padded = doc_len < width ? width : doc_len;
  return padded - width + 1;
}

/// Pre-activation <f, window_t> + bias for one window.
double window_pre_activation(const DocumentRows& doc, const FilterRef& filter, std::size_t t);

PoolResult conv_relu_pool(const DocumentRows& doc, std::span<const FilterRef> filters);

namespace serial {
PoolResult conv_relu_pool(const DocumentRows& doc, std::span<const FilterRef> filters);
}  // namespace serial

}  // namespace fnd::kernels
