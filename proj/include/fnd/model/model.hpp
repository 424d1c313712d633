#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fnd/corpus/records.hpp"
#include "fnd/corpus/vocabulary.hpp"
#include "fnd/model/setup.hpp"
#include "fnd/nn/conv.hpp"
#include "fnd/nn/ops.hpp"
#include "fnd/util/rng.hpp"

namespace fnd::model {

struct ModelConfig {
  Setup setup = Setup::kNews;
  std::size_t num_filters = 10;  // d, total across widths 1..3
  double dropout = 0.0;
  std::size_t embedding_dim = 200;
  std::size_t vocab_size = 0;
  std::uint64_t seed = 1;
};

/// One news item as the model sees it. `news` is set when the setup uses
/// news text; `users` holds one document per spreader when it uses user text.
struct Instance {
  std::string id;
  std::optional<corpus::Document> news;
  std::vector<corpus::Document> users;
  corpus::Label label = corpus::Label::kReal;
};

/// Per-user gates s, per-user vectors u_i (rows) and their weighted sum u.
struct AggregationTrace {
  nn::Vector gates;
  nn::Matrix user_vectors;
  nn::Vector aggregate;
};

/// Scalar gate σ(wᵀx + b) that scales a whole modality vector.
struct ModalityGate {
  nn::Parameter weight;  // d × 1
  nn::Parameter bias;    // 1 × 1
};

/// Everything backward() needs from one forward pass.
struct ForwardTrace {
  bool complete = false;

  kernels::PoolResult news_pool;
  nn::Vector news_mask;
  nn::Vector news_vector;  // after dropout
  double news_gate = 0.0;

  std::vector<kernels::PoolResult> user_pools;
  std::vector<nn::Vector> user_masks;
  AggregationTrace users;
  double user_gate = 0.0;

  nn::Vector features;
  std::array<double, 2> logits{};
};

struct Prediction {
  corpus::Label label = corpus::Label::kReal;
  double p_fake = 0.0;
};

/// Ties go to real.
corpus::Label decide(std::span<const double> logits);

// News encoder, user encoder with user-importance gate, one scalar gate per
// modality, and a linear two-class classifier over the gated, concatenated
// modality vectors (news block first). Both encoders always exist; only the
// ones the setup uses take part in forward/backward.
class FakeNewsModel {
 public:
  FakeNewsModel() = default;
  /// Parameters are shaped and randomly initialized from config.seed.
  explicit FakeNewsModel(const ModelConfig& config);

  const ModelConfig& config() const { return config_; }
  std::size_t d() const { return config_.num_filters; }

  // ---- forward pieces ----
  /// n = pooled news vector (dropout applied when training).
  nn::Vector encode_news(const corpus::Document& doc, bool training, Rng* rng,
                         ForwardTrace* trace = nullptr) const;
  /// Throws std::invalid_argument("no user texts") for m = 0.
  AggregationTrace aggregate_users(const std::vector<corpus::Document>& docs, bool training,
                                   Rng* rng, ForwardTrace* trace = nullptr) const;
  /// Throws when a modality required by the setup is missing.
  std::array<double, 2> fuse_and_classify(const std::optional<nn::Vector>& news,
                                          const std::optional<nn::Vector>& users,
                                          ForwardTrace* trace = nullptr) const;

  /// Full forward pass. `rng` drives dropout and is required when training.
  ForwardTrace forward(const Instance& instance, bool training, Rng* rng = nullptr) const;

  /// Accumulates ∂(scale · loss)/∂θ into every parameter gradient.
  /// Throws std::logic_error if `trace` is not a completed forward pass.
  double backward(const Instance& instance, const ForwardTrace& trace, double scale = 1.0);

  Prediction predict(const Instance& instance) const;

  // ---- parameters ----
  std::vector<nn::Parameter*> parameters();
  std::vector<const nn::Parameter*> parameters() const;
  void zero_grad();

  nn::ConvEncoder& news_encoder() { return news_encoder_; }
  const nn::ConvEncoder& news_encoder() const { return news_encoder_; }
  nn::ConvEncoder& user_encoder() { return user_encoder_; }
  const nn::ConvEncoder& user_encoder() const { return user_encoder_; }
  nn::Parameter& user_gate() { return user_gate_; }
  const nn::Parameter& user_gate() const { return user_gate_; }
  ModalityGate& news_modality_gate() { return news_gate_; }
  const ModalityGate& news_modality_gate() const { return news_gate_; }
  ModalityGate& user_modality_gate() { return user_modality_gate_; }
  const ModalityGate& user_modality_gate() const { return user_modality_gate_; }
  nn::Parameter& classifier_weight() { return classifier_w_; }
  const nn::Parameter& classifier_weight() const { return classifier_w_; }
  nn::Parameter& classifier_bias() { return classifier_b_; }
  const nn::Parameter& classifier_bias() const { return classifier_b_; }

  /// First classifier row of the news / user block.
  std::size_t news_block_offset() const { return 0; }
  std::size_t user_block_offset() const { return uses_news(config_.setup) ? d() : 0; }

  /// True for parameters belonging to the user side (user encoder, user
  /// gate, user modality gate).
  bool is_user_parameter(const nn::Parameter& p) const;
  bool is_news_parameter(const nn::Parameter& p) const;

 private:
  ModelConfig config_;
  nn::ConvEncoder news_encoder_;
  nn::ConvEncoder user_encoder_;
  nn::Parameter user_gate_;
  ModalityGate news_gate_;
  ModalityGate user_modality_gate_;
  nn::Parameter classifier_w_;
  nn::Parameter classifier_b_;
};

}  // namespace fnd::model
