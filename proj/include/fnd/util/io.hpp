#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace fnd::io {

std::string read_file(const std::filesystem::path& path);

/// Writes via a sibling temporary file and rename, so readers never see a
/// partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Throws MissingArtifact when the path does not exist.
void require_exists(const std::filesystem::path& path);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view bytes);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

}  // namespace fnd::io
