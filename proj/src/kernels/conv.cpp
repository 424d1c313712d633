#include "fnd/kernels/conv.hpp"

namespace fnd::kernels {
namespace {

void pool_one(const DocumentRows& doc, const FilterRef& filter, std::size_t f, PoolResult& out) {
  const std::size_t windows = window_count(doc.rows.size(), filter.width);
  double best = -1.0;
  double best_pre = 0.0;
  std::size_t best_t = 0;
  for (std::size_t t = 0; t < windows; ++t) {
    const double pre = window_pre_activation(doc, filter, t);
    const double act = pre > 0.0 ? pre : 0.0;
    if (act > best) {
      best = act;
      best_pre = pre;
      best_t = t;
    }
  }
  out.value[f] = best;
  out.position[f] = best_t;
  out.pre_activation[f] = best_pre;
}

PoolResult make_result(std::size_t n) {
  PoolResult r;
  r.value.assign(n, 0.0);
  r.position.assign(n, 0);
  r.pre_activation.assign(n, 0.0);
  return r;
}

}  // namespace

double window_pre_activation(const DocumentRows& doc, const FilterRef& filter, std::size_t t) {
  double sum = filter.bias;
  const std::size_t dim = doc.dim;
  for (std::size_t j = 0; j < filter.width; ++j) {
    const std::size_t pos = t + j;
    if (pos >= doc.rows.size() || doc.rows[pos] == nullptr) continue;
    const double* row = doc.rows[pos];
    const double* w = filter.weights.data() + j * dim;
    double dot = 0.0;
    for (std::size_t k = 0; k < dim; ++k) dot += w[k] * row[k];
    sum += dot;
  }
  return sum;
}

PoolResult conv_relu_pool(const DocumentRows& doc, std::span<const FilterRef> filters) {
  PoolResult out = make_result(filters.size());
  const auto n = static_cast<std::ptrdiff_t>(filters.size());
#pragma omp parallel for schedule(static) if (n * static_cast<std::ptrdiff_t>(doc.rows.size()) > 4096)
  for (std::ptrdiff_t f = 0; f < n; ++f) {
    pool_one(doc, filters[static_cast<std::size_t>(f)], static_cast<std::size_t>(f), out);
  }
  return out;
}

namespace serial {

PoolResult conv_relu_pool(const DocumentRows& doc, std::span<const FilterRef> filters) {
  PoolResult out = make_result(filters.size());
  for (std::size_t f = 0; f < filters.size(); ++f) pool_one(doc, filters[f], f, out);
  return out;
}

}  // namespace serial
}  // namespace fnd::kernels
