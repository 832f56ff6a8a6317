#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rbloch/fp_group.hpp"

namespace rbloch::cli {

/// On-disk store of presentations with their Smith data, keyed by name.
/// Entries carry an FNV-1a hash of their body and are accepted only if the
/// hash, labels and relations all match; anything else is discarded and
/// rebuilt. Writes go through a temporary file and a rename.
class PresentationCache {
 public:
  static constexpr const char* kEnvVar = "RBLOCH_CACHE_DIR";

  /// Disabled cache.
  PresentationCache() = default;
  explicit PresentationCache(std::filesystem::path dir);
  /// Flag first, then the environment variable; disabled when neither is set
  /// or when `bypass` is true.
  static PresentationCache configure(const std::string& dir_flag, bool bypass);

  PresentationCache(const PresentationCache& other);
  PresentationCache& operator=(const PresentationCache&) = delete;

  bool enabled() const { return dir_.has_value(); }
  std::filesystem::path entry_path(const std::string& key) const;

  std::optional<FPGroup> get(const std::string& key, const std::vector<std::string>& labels,
                             const IntMatrix& relations);
  void put(const std::string& key, const FPGroup& group);
  /// get() or build from labels and relations, then put().
  FPGroup fetch(const std::string& key, std::vector<std::string> labels, IntMatrix relations);

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::optional<std::filesystem::path> dir_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

std::uint64_t fnv1a(std::string_view data);

}  // namespace rbloch::cli
