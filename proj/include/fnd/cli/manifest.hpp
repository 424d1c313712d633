#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace fnd::cli {

/// Provenance of one command run. Timings live here and nowhere else.
struct RunManifest {
  std::string command;
  std::string config;
  std::vector<std::uint64_t> seeds;
  std::map<std::string, std::string> inputs;   // path -> content hash
  std::map<std::string, std::string> outputs;  // path -> content hash
  double seconds = 0.0;
  std::string finished_at;  // UTC, ISO-8601
};

/// Hashes a file, or every regular file below a directory (sorted by path).
std::string hash_path(const std::filesystem::path& path);

std::string manifest_json(const RunManifest& manifest);
/// Stamps finished_at and writes atomically.
void write_manifest(RunManifest manifest, const std::filesystem::path& path);

}  // namespace fnd::cli
