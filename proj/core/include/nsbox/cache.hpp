#pragma once

#include <filesystem>
#include <vector>

#include "nsbox/local_polytope.hpp"
#include "nsbox/wiring.hpp"

namespace nsbox {

/// On-disk cache of per-setting enumerations (deterministic points and
/// same-setting wirings). Files carry a content hash that is re-checked on
/// load; a corrupt or stale file is regenerated, so results never depend on
/// cache state. Writes go through a temp file and an atomic rename.
class EnumerationCache {
 public:
  /// Reads NSBOX_CACHE_DIR: unset -> user cache directory
  /// (~/.cache/nsbox), empty -> caching disabled.
  static EnumerationCache from_environment();

  EnumerationCache() = default;  // disabled
  explicit EnumerationCache(std::filesystem::path dir);

  bool enabled() const { return enabled_; }
  const std::filesystem::path& dir() const { return dir_; }

  VertexSet vertices(const Setting& s, std::uint64_t cap = kDefaultVertexCap);
  std::vector<LocalWiring> wirings(const Setting& s, std::uint64_t cap = kDefaultWiringCap);

 private:
  std::filesystem::path dir_;
  bool enabled_ = false;
};

}  // namespace nsbox
