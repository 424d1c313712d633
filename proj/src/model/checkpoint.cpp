#include "fnd/model/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <json.hpp>

#include "fnd/util/error.hpp"
#include "fnd/util/io.hpp"

namespace fnd::model {
namespace {

using nlohmann::json;

constexpr char kMagic[8] = {'F', 'N', 'D', 'C', 'K', 'P', 'T', '1'};

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const std::string& in, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + static_cast<std::size_t>(i)]))
         << (8 * i);
  }
  return v;
}

json config_to(const ModelConfig& c) {
  return {{"setup", std::string(setup_name(c.setup))},
          {"num_filters", c.num_filters},
          {"dropout", c.dropout},
          {"embedding_dim", c.embedding_dim},
          {"vocab_size", c.vocab_size},
          {"seed", c.seed}};
}

ModelConfig config_from(const json& j) {
  ModelConfig c;
  const auto setup = parse_setup(j.at("setup").get<std::string>());
  if (!setup) throw InputError("checkpoint: unknown setup " + j.at("setup").dump());
  c.setup = *setup;
  c.num_filters = j.at("num_filters").get<std::size_t>();
  c.dropout = j.at("dropout").get<double>();
  c.embedding_dim = j.at("embedding_dim").get<std::size_t>();
  c.vocab_size = j.at("vocab_size").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

std::string config_json(const ModelConfig& config) { return config_to(config).dump(); }

ModelConfig config_from_json(const std::string& text) { return config_from(json::parse(text)); }

std::string serialize_checkpoint(const FakeNewsModel& model) {
  const auto params = model.parameters();
  json header;
  header["format"] = "fnd-checkpoint";
  header["version"] = 1;
  header["config"] = config_to(model.config());
  json shapes = json::array();
  for (const nn::Parameter* p : params) {
    shapes.push_back({{"name", p->name}, {"rows", p->value.rows()}, {"cols", p->value.cols()}});
  }
  header["parameters"] = shapes;
  const std::string header_text = header.dump();

  std::string out(kMagic, sizeof(kMagic));
  put_u64(out, header_text.size());
  out += header_text;
  for (const nn::Parameter* p : params) {
    for (double v : p->value.values()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  }
  return out;
}

FakeNewsModel deserialize_checkpoint(const std::string& bytes) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw InputError("checkpoint: bad magic");
  }
  const std::uint64_t header_len = get_u64(bytes, 8);
  if (16 + header_len > bytes.size()) throw InputError("checkpoint: truncated header");
  json header;
  try {
    header = json::parse(bytes.substr(16, header_len));
  } catch (const json::exception& e) {
    throw InputError(std::string("checkpoint: bad header: ") + e.what());
  }

  FakeNewsModel model(config_from(header.at("config")));
  auto params = model.parameters();
  const json& shapes = header.at("parameters");
  if (shapes.size() != params.size()) throw InputError("checkpoint: parameter count mismatch");

  std::size_t pos = 16 + header_len;
  for (std::size_t i = 0; i < params.size(); ++i) {
    nn::Parameter& p = *params[i];
    const json& s = shapes[i];
    if (s.at("name").get<std::string>() != p.name ||
        s.at("rows").get<std::size_t>() != p.value.rows() ||
        s.at("cols").get<std::size_t>() != p.value.cols()) {
      throw InputError("checkpoint: shape mismatch for " + p.name);
    }
    if (pos + 8 * p.value.size() > bytes.size()) throw InputError("checkpoint: truncated data");
    for (double& v : p.value.values()) {
      v = std::bit_cast<double>(get_u64(bytes, pos));
      pos += 8;
    }
  }
  if (pos != bytes.size()) throw InputError("checkpoint: trailing bytes");
  return model;
}

void save_checkpoint(const FakeNewsModel& model, const std::filesystem::path& path) {
  io::write_file_atomic(path, serialize_checkpoint(model));
}

FakeNewsModel load_checkpoint(const std::filesystem::path& path) {
  io::require_exists(path);
  return deserialize_checkpoint(io::read_file(path));
}

}  // namespace fnd::model
