#include "fnd/nn/embeddings.hpp"

#include <charconv>
#include <fstream>
#include <vector>

#include "fnd/util/error.hpp"

namespace fnd::nn {

Matrix random_embeddings(std::size_t vocab_size, std::size_t dim, Rng& rng) {
  Matrix table(vocab_size, dim);
  for (std::size_t r = 0; r < vocab_size; ++r) {
    for (double& x : table.row(r)) x = rng.uniform(-kEmbeddingInitBound, kEmbeddingInitBound);
  }
  for (double& x : table.row(corpus::Vocabulary::kPad)) x = 0.0;
  return table;
}

Matrix load_embeddings(const std::filesystem::path& path, const corpus::Vocabulary& vocab,
                       std::uint64_t seed, std::size_t dim, EmbeddingCoverage* coverage) {
  std::ifstream in(path);
  if (!in) throw MissingArtifact(path.string());

  Rng rng(seed);
  Matrix table = random_embeddings(vocab.size(), dim, rng);
  std::vector<bool> filled(vocab.size(), false);

  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);

    std::size_t pos = line.find_first_not_of(" \t");
    std::size_t end = line.find_first_of(" \t", pos);
    if (end == std::string::npos) throw InputError(where + ": missing vector values");
    const std::string token = line.substr(pos, end - pos);

    values.clear();
    pos = end;
    while (true) {
      pos = line.find_first_not_of(" \t", pos);
      if (pos == std::string::npos) break;
      end = line.find_first_of(" \t", pos);
      if (end == std::string::npos) end = line.size();
      double v = 0.0;
      auto [p, ec] = std::from_chars(line.data() + pos, line.data() + end, v);
      if (ec != std::errc() || p != line.data() + end) {
        throw InputError(where + ": malformed number \"" + line.substr(pos, end - pos) + "\"");
      }
      values.push_back(v);
      pos = end;
    }
    if (values.size() != dim) {
      throw InputError(where + ": expected " + std::to_string(dim) + " dimensions, got " +
                       std::to_string(values.size()));
    }

    if (corpus::is_special_tag(token) || !vocab.contains(token)) continue;
    const auto id = static_cast<std::size_t>(vocab.id(token));
    auto row = table.row(id);
    std::copy(values.begin(), values.end(), row.begin());
    filled[id] = true;
  }

  if (coverage) {
    coverage->pretrained = 0;
    for (bool f : filled) coverage->pretrained += f ? 1 : 0;
    coverage->random = vocab.size() - coverage->pretrained;
  }
  return table;
}

}  // namespace fnd::nn
