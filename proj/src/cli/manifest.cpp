#include "fnd/cli/manifest.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <json.hpp>

#include "fnd/util/io.hpp"

namespace fnd::cli {

std::string hash_path(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) return "missing";
  if (fs::is_regular_file(path)) return io::fnv1a_hex(io::read_file(path));
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(path)) {
    if (entry.is_regular_file() && entry.path().filename() != "manifest.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::string combined;
  for (const fs::path& f : files) {
    combined += fs::relative(f, path).generic_string() + "=" + io::fnv1a_hex(io::read_file(f)) + "\n";
  }
  return io::fnv1a_hex(combined);
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["config"] = m.config;
  j["seeds"] = m.seeds;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["seconds"] = m.seconds;
  j["finished_at"] = m.finished_at;
  return j.dump(2) + "\n";
}

void write_manifest(RunManifest manifest, const std::filesystem::path& path) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  manifest.finished_at = buf;
  io::write_file_atomic(path, manifest_json(manifest));
}

}  // namespace fnd::cli
