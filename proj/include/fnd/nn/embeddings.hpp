#pragma once

#include <cstdint>
#include <filesystem>

#include "fnd/corpus/vocabulary.hpp"
#include "fnd/nn/matrix.hpp"
#include "fnd/util/rng.hpp"

namespace fnd::nn {

inline constexpr std::size_t kGloveDim = 200;
inline constexpr double kEmbeddingInitBound = 0.05;

/// |V| × dim table: uniform(-0.05, 0.05) rows, <PAD> row zero.
Matrix random_embeddings(std::size_t vocab_size, std::size_t dim, Rng& rng);

struct EmbeddingCoverage {
  std::size_t pretrained = 0;  // vocabulary rows copied from the file
  std::size_t random = 0;      // rows left at their random init
};

/// Reads "token v1 ... v_dim" lines (GloVe text format). Vocabulary tokens
/// found in the file take the file vector; special tags and missing tokens
/// keep the seeded random init. Throws InputError naming the line on a
/// malformed line or a vector of the wrong dimension.
Matrix load_embeddings(const std::filesystem::path& path, const corpus::Vocabulary& vocab,
                       std::uint64_t seed, std::size_t dim = kGloveDim,
                       EmbeddingCoverage* coverage = nullptr);

}  // namespace fnd::nn
