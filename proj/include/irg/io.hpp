#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace irg::io {

/// Shortest decimal that round-trips the double exactly.
std::string format_double(double x);

/// Creates the directory (and parents) if missing; throws with the path on failure.
void ensure_directory(const std::filesystem::path& dir);

/// Pretty-printed JSON followed by a newline.
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace irg::io
