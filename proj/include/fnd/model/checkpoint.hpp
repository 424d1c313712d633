#pragma once

#include <filesystem>
#include <string>

#include "fnd/model/model.hpp"

namespace fnd::model {

// Layout: 8-byte magic "FNDCKPT1", u64 little-endian header length, JSON
// header (config + parameter names/shapes), then each parameter's values as
// little-endian IEEE-754 doubles in header order. Values round-trip exactly.

std::string config_json(const ModelConfig& config);
ModelConfig config_from_json(const std::string& text);

std::string serialize_checkpoint(const FakeNewsModel& model);
FakeNewsModel deserialize_checkpoint(const std::string& bytes);

void save_checkpoint(const FakeNewsModel& model, const std::filesystem::path& path);
/// Throws MissingArtifact if the file is absent, InputError if malformed.
FakeNewsModel load_checkpoint(const std::filesystem::path& path);

}  // namespace fnd::model
