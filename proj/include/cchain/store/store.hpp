#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cchain {

/// One cached record. payload is canonical JSON text; checksum is its CRC-64.
struct CacheEntry {
  std::string kind;  // space, orbits, edges, report, plan
  std::vector<std::string> params;
  std::string payload;
  int version = 0;
  std::uint64_t checksum = 0;
};

std::uint64_t payload_checksum(const std::string& payload);

/// Fills version and checksum.
CacheEntry make_entry(std::string kind, std::vector<std::string> params, std::string payload);

/// File-per-entry JSON cache with advisory locks.
class Store {
 public:
  explicit Store(std::filesystem::path dir);

  /// --cache-dir wins over CCHAIN_CACHE_DIR; nullopt when neither is set.
  static std::optional<std::filesystem::path> resolve_dir(const std::optional<std::string>& flag);

  void put(const CacheEntry& e) const;
  std::optional<CacheEntry> get(const std::string& kind, const std::vector<std::string>& params) const;
  std::filesystem::path file_for(const std::string& kind, const std::vector<std::string>& params) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace cchain
