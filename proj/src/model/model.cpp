#include "fnd/model/model.hpp"

#include <cmath>
#include <stdexcept>

namespace fnd::model {
namespace {

void glorot(nn::Parameter& p, Rng& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(p.value.rows() + p.value.cols()));
  for (double& x : p.value.values()) x = rng.uniform(-bound, bound);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double gate_value(const ModalityGate& gate, std::span<const double> x) {
  return nn::sigmoid(dot(gate.weight.value.values(), x) + gate.bias.value(0, 0));
}

// Backprop through y = g·x with g = σ(wᵀx + b); returns dx.
nn::Vector gate_backward(ModalityGate& gate, std::span<const double> x, double g,
                         std::span<const double> dy) {
  const double dg = dot(dy, x);
  const double dpre = dg * g * (1.0 - g);
  nn::Vector dx(x.size());
  auto w = gate.weight.value.values();
  auto gw = gate.weight.grad.values();
  for (std::size_t i = 0; i < x.size(); ++i) {
    dx[i] = g * dy[i] + dpre * w[i];
    gw[i] += dpre * x[i];
  }
  gate.bias.grad(0, 0) += dpre;
  return dx;
}

}  // namespace

corpus::Label decide(std::span<const double> logits) {
  return logits[1] > logits[0] ? corpus::Label::kFake : corpus::Label::kReal;
}

FakeNewsModel::FakeNewsModel(const ModelConfig& config)
    : config_(config),
      news_encoder_("news", config.vocab_size, config.embedding_dim, config.num_filters),
      user_encoder_("user", config.vocab_size, config.embedding_dim, config.num_filters),
      user_gate_("user_gate", config.num_filters, 1),
      news_gate_{nn::Parameter("news_modality_gate.weight", config.num_filters, 1),
                 nn::Parameter("news_modality_gate.bias", 1, 1)},
      user_modality_gate_{nn::Parameter("user_modality_gate.weight", config.num_filters, 1),
                          nn::Parameter("user_modality_gate.bias", 1, 1)},
      classifier_w_("classifier.weight", config.num_filters * modality_count(config.setup), 2),
      classifier_b_("classifier.bias", 1, 2) {
  if (config.num_filters == 0) throw std::invalid_argument("num_filters must be positive");
  if (config.vocab_size <= corpus::Vocabulary::kPad) {
    throw std::invalid_argument("vocab_size must cover the special tokens");
  }
  Rng rng(config.seed);
  news_encoder_.initialize(rng);
  user_encoder_.initialize(rng);
  glorot(user_gate_, rng);
  glorot(news_gate_.weight, rng);
  glorot(user_modality_gate_.weight, rng);
  glorot(classifier_w_, rng);
}

nn::Vector FakeNewsModel::encode_news(const corpus::Document& doc, bool training, Rng* rng,
                                      ForwardTrace* trace) const {
  kernels::PoolResult pool = news_encoder_.forward(doc);
  nn::Vector mask;
  nn::Vector n;
  if (training) {
    if (!rng) throw std::invalid_argument("training forward pass needs an Rng");
    n = nn::dropout(pool.value, config_.dropout, true, *rng, &mask);
  } else {
    n = pool.value;
    mask.assign(n.size(), 1.0);
  }
  if (trace) {
    trace->news_pool = std::move(pool);
    trace->news_mask = std::move(mask);
    trace->news_vector = n;
  }
  return n;
}

AggregationTrace FakeNewsModel::aggregate_users(const std::vector<corpus::Document>& docs,
                                                bool training, Rng* rng,
                                                ForwardTrace* trace) const {
  if (docs.empty()) throw std::invalid_argument("no user texts");
  if (training && !rng) throw std::invalid_argument("training forward pass needs an Rng");
  const std::size_t m = docs.size();
  const std::size_t dd = d();
  AggregationTrace agg;
  agg.user_vectors = nn::Matrix(m, dd);
  agg.gates.assign(m, 0.0);
  agg.aggregate.assign(dd, 0.0);

  std::vector<kernels::PoolResult> pools(m);
  std::vector<nn::Vector> masks(m);
  for (std::size_t i = 0; i < m; ++i) {
    pools[i] = user_encoder_.forward(docs[i]);
    nn::Vector ui;
    if (training) {
      ui = nn::dropout(pools[i].value, config_.dropout, true, *rng, &masks[i]);
    } else {
      ui = pools[i].value;
      masks[i].assign(dd, 1.0);
    }
    std::copy(ui.begin(), ui.end(), agg.user_vectors.row(i).begin());
  }
  const auto wg = user_gate_.value.values();
  for (std::size_t i = 0; i < m; ++i) {
    const auto ui = agg.user_vectors.row(i);
    const double s = nn::sigmoid(dot(ui, wg));
    agg.gates[i] = s;
    for (std::size_t k = 0; k < dd; ++k) agg.aggregate[k] += s * ui[k];
  }
  if (trace) {
    trace->user_pools = std::move(pools);
    trace->user_masks = std::move(masks);
    trace->users = agg;
  }
  return agg;
}

std::array<double, 2> FakeNewsModel::fuse_and_classify(const std::optional<nn::Vector>& news,
                                                       const std::optional<nn::Vector>& users,
                                                       ForwardTrace* trace) const {
  const Setup setup = config_.setup;
  if (uses_news(setup) && !news) {
    throw std::invalid_argument("setup " + std::string(setup_name(setup)) + " needs news text");
  }
  if (uses_users(setup) && !users) {
    throw std::invalid_argument("setup " + std::string(setup_name(setup)) + " needs user texts");
  }
  nn::Vector features;
  features.reserve(classifier_w_.value.rows());
  if (uses_news(setup)) {
    const double g = gate_value(news_gate_, *news);
    for (double x : *news) features.push_back(g * x);
    if (trace) trace->news_gate = g;
  }
  if (uses_users(setup)) {
    const double g = gate_value(user_modality_gate_, *users);
    for (double x : *users) features.push_back(g * x);
    if (trace) trace->user_gate = g;
  }
  const nn::Vector logits = nn::linear(features, classifier_w_, classifier_b_);
  if (trace) trace->features = std::move(features);
  return {logits[0], logits[1]};
}

ForwardTrace FakeNewsModel::forward(const Instance& instance, bool training, Rng* rng) const {
  ForwardTrace trace;
  std::optional<nn::Vector> n;
  std::optional<nn::Vector> u;
  if (uses_news(config_.setup)) {
    if (!instance.news) throw std::invalid_argument("instance has no news document");
    n = encode_news(*instance.news, training, rng, &trace);
  }
  if (uses_users(config_.setup)) {
    u = aggregate_users(instance.users, training, rng, &trace).aggregate;
  }
  trace.logits = fuse_and_classify(n, u, &trace);
  trace.complete = true;
  return trace;
}

double FakeNewsModel::backward(const Instance& instance, const ForwardTrace& trace, double scale) {
  if (!trace.complete) throw std::logic_error("backward called before forward");
  const int target = static_cast<int>(instance.label);
  const nn::SoftmaxXent xent = nn::softmax_xent(trace.logits, target);
  std::array<double, 2> dlogits = nn::softmax_xent_grad(xent, target);
  for (double& g : dlogits) g *= scale;

  const nn::Vector dfeatures =
      nn::linear_backward(trace.features, dlogits, classifier_w_, classifier_b_);
  const std::size_t dd = d();
  const std::span<const double> dfeat(dfeatures);

  if (uses_news(config_.setup)) {
    const nn::Vector dn = gate_backward(news_gate_, trace.news_vector, trace.news_gate,
                                        dfeat.subspan(news_block_offset(), dd));
    nn::Vector dpooled(dd);
    for (std::size_t k = 0; k < dd; ++k) dpooled[k] = dn[k] * trace.news_mask[k];
    news_encoder_.backward(*instance.news, trace.news_pool, dpooled);
  }

  if (uses_users(config_.setup)) {
    const AggregationTrace& agg = trace.users;
    const nn::Vector du = gate_backward(user_modality_gate_, agg.aggregate, trace.user_gate,
                                        dfeat.subspan(user_block_offset(), dd));
    auto wg = user_gate_.value.values();
    auto gwg = user_gate_.grad.values();
    nn::Vector dpooled(dd);
    for (std::size_t i = 0; i < instance.users.size(); ++i) {
      const auto ui = agg.user_vectors.row(i);
      const double s = agg.gates[i];
      const double dpre = dot(du, ui) * s * (1.0 - s);
      for (std::size_t k = 0; k < dd; ++k) {
        gwg[k] += dpre * ui[k];
        dpooled[k] = (s * du[k] + dpre * wg[k]) * trace.user_masks[i][k];
      }
      user_encoder_.backward(instance.users[i], trace.user_pools[i], dpooled);
    }
  }
  return xent.loss;
}

Prediction FakeNewsModel::predict(const Instance& instance) const {
  const ForwardTrace trace = forward(instance, false);
  const nn::SoftmaxXent xent = nn::softmax_xent(trace.logits, 0);
  return {decide(trace.logits), xent.probabilities[1]};
}

std::vector<nn::Parameter*> FakeNewsModel::parameters() {
  std::vector<nn::Parameter*> out;
  news_encoder_.collect(out);
  user_encoder_.collect(out);
  out.push_back(&user_gate_);
  out.push_back(&news_gate_.weight);
  out.push_back(&news_gate_.bias);
  out.push_back(&user_modality_gate_.weight);
  out.push_back(&user_modality_gate_.bias);
  out.push_back(&classifier_w_);
  out.push_back(&classifier_b_);
  return out;
}

std::vector<const nn::Parameter*> FakeNewsModel::parameters() const {
  std::vector<const nn::Parameter*> out;
  news_encoder_.collect(out);
  user_encoder_.collect(out);
  out.push_back(&user_gate_);
  out.push_back(&news_gate_.weight);
  out.push_back(&news_gate_.bias);
  out.push_back(&user_modality_gate_.weight);
  out.push_back(&user_modality_gate_.bias);
  out.push_back(&classifier_w_);
  out.push_back(&classifier_b_);
  return out;
}

void FakeNewsModel::zero_grad() {
  for (nn::Parameter* p : parameters()) p->zero_grad();
}

bool FakeNewsModel::is_user_parameter(const nn::Parameter& p) const {
  return p.name.rfind("user", 0) == 0;
}

bool FakeNewsModel::is_news_parameter(const nn::Parameter& p) const {
  return p.name.rfind("news", 0) == 0;
}

}  // namespace fnd::model
