#include "irg/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace irg::io {

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

void ensure_directory(const std::filesystem::path& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
}

void write_json_file(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("invalid JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace irg::io
