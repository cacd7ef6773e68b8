// Copyright 2026 the fastbo authors
// SPDX-License-Identifier: Apache-2.0

#ifndef FASTBO_TEXTIO_HPP
#define FASTBO_TEXTIO_HPP

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fastbo/errors.hpp"

namespace fastbo {

// Shortest round-trip decimal form; locale-free and deterministic, so files
// built from these strings hash identically across runs.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::optional<double> parse_double(std::string_view s) {
  double v = 0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return v;
}

inline std::optional<long> parse_long(std::string_view s) {
  long v = 0;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return v;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Temp-file-then-rename write: readers never observe a partial file and
// reruns replace outputs wholesale.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write file: " + tmp.string());
    out << content;
    if (!out.good()) throw ValidationError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// FNV-1a, used for output-file integrity stamps in manifests.
inline std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string fnv1a_hex(std::string_view data) {
  char buf[17];
  auto res = std::to_chars(buf, buf + sizeof(buf), fnv1a(data), 16);
  std::string s(buf, res.ptr);
  return std::string(16 - s.size(), '0') + s;
}

}  // namespace fastbo

#endif  // FASTBO_TEXTIO_HPP
