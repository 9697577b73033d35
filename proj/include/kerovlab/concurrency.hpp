#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kerovlab {

/// Process-wide default for parallel loops; 0 means hardware concurrency.
void set_default_jobs(unsigned jobs) noexcept;
unsigned default_jobs() noexcept;

/// Runs body(i) for i in [0, count) on up to `jobs` threads. The first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned jobs = 0);

/// Read-mostly memo table. Concurrent fills of the same key compute
/// identical values; the first insertion wins.
template <typename Key, typename Value, typename Hash = std::hash<Key>>
class MemoTable {
public:
    template <typename Compute>
    Value get_or_compute(const Key& key, Compute&& compute) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        Value value = compute();
        std::unique_lock lock(mutex_);
        return table_.try_emplace(key, std::move(value)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return table_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, Value, Hash> table_;
};

}  // namespace kerovlab
