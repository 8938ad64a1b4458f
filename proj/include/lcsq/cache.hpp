#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "lcsq/lcs_engine.hpp"

namespace lcsq {

inline constexpr const char* kEngineVersion = "0.1.0";

// Identifies one table computation. Relations are canonical renderings,
// sorted, so the key is insensitive to relation order.
struct ComputationKey {
  std::string ring;
  int gens = 0;
  std::vector<std::string> relations;
  int lcs_index = 0;
  int max_degree = 0;
  std::string version = kEngineVersion;

  static ComputationKey for_table(const AlgebraPresentation& pres, int i, int bound);

  // Canonical identity string; the version is carried separately so that a
  // version bump invalidates records without renaming files.
  std::string canonical() const;
  std::string hash() const;  // stable fnv-1a of canonical()

  friend bool operator==(const ComputationKey&, const ComputationKey&) = default;
};

struct CacheRecord {
  ComputationKey key;
  BigradedTable table;
  double wall_seconds = 0.0;
  double peak_memory_mb = 0.0;
};

// One JSON document per key under dir, filename = key hash. Returns nullopt
// on miss, stale version tag, or a corrupt file (logged to stderr).
std::optional<CacheRecord> cache_get(const std::filesystem::path& dir,
                                     const ComputationKey& key);

// Atomic write (temp file + rename); concurrent writers are safe.
void cache_put(const std::filesystem::path& dir, const CacheRecord& record);

std::string table_to_json(const BigradedTable& table);
BigradedTable table_from_json(const std::string& json_text);

// Resident peak of this process in MB (ru_maxrss).
double peak_memory_mb();

}  // namespace lcsq
