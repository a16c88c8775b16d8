#pragma once

#include <memory>
#include <mutex>

namespace toriclg::detail {

/// Write-once cache lookup: builds outside the lock, keeps the first value
/// stored for a key. References stay valid because entries are never erased.
template <typename Map, typename Key, typename Make>
const auto& cached(std::mutex& mutex, Map& map, const Key& key, Make&& make) {
  {
    std::lock_guard lock(mutex);
    if (auto it = map.find(key); it != map.end()) return *it->second;
  }
  auto value = make();
  std::lock_guard lock(mutex);
  return *map.emplace(key, std::move(value)).first->second;
}

}  // namespace toriclg::detail
