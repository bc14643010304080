#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "ccstream/oracle.hpp"
#include "ccstream/serialize.hpp"

namespace ccstream {

/// FNV-1a over raw bytes; keys the oracle cache by edge-list content.
inline std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i)
      h = (h ^ std::uint8_t(buf[i])) * 0x100000001b3ULL;
  }
  return h;
}

/// Cache directory: CCSTREAM_CACHE_DIR if set, else .ccstream_cache in the
/// working directory.
inline std::filesystem::path oracle_cache_dir() {
  if (const char* env = std::getenv("CCSTREAM_CACHE_DIR")) return env;
  return ".ccstream_cache";
}

inline std::optional<ExactStats> load_cached_stats(std::uint64_t content_hash) {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", (unsigned long long)content_hash);
  const auto file = oracle_cache_dir() / name;
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    return j.at("stats").get<ExactStats>();
  } catch (...) {
    return std::nullopt;  // stale or corrupt entry; recompute
  }
}

inline void store_cached_stats(std::uint64_t content_hash, const std::string& source,
                               const ExactStats& stats) {
  std::error_code ec;
  std::filesystem::create_directories(oracle_cache_dir(), ec);
  if (ec) return;  // cache is best-effort
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", (unsigned long long)content_hash);
  std::ofstream out(oracle_cache_dir() / name);
  if (!out) return;
  nlohmann::json j{{"source", source}, {"stats", stats}};
  out << j.dump(2) << "\n";
}

/// Oracle stats for an edge-list file, cached by content hash.
inline ExactStats stats_for_file(const std::filesystem::path& path, const Graph& graph) {
  const std::uint64_t h = fnv1a64_file(path);
  if (auto cached = load_cached_stats(h)) return *cached;
  ExactStats stats = exact_stats(graph);
  store_cached_stats(h, path.string(), stats);
  return stats;
}

}  // namespace ccstream
