#pragma once

#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>

#include "kerovlab/kerov.hpp"

namespace kerovlab {

/// Shared access to K_r: in-memory memo plus an optional write-once disk
/// cache (one JSON file per r, tagged with a format version).
class KerovProvider {
public:
    static constexpr int kFormatVersion = 1;

    struct Options {
        std::optional<std::filesystem::path> cache_dir;
        InterpolationOptions interpolation;
    };

    KerovProvider() : KerovProvider(Options{}) {}
    explicit KerovProvider(Options options);

    /// Thread-safe; each r is computed (or loaded) at most once.
    const KerovPolynomial& get(int r);

    /// Computes several r concurrently.
    void prefetch(std::span<const int> rs, unsigned jobs = 0);

    const std::optional<std::filesystem::path>& cache_dir() const noexcept { return options_.cache_dir; }

    /// Value of KEROVLAB_CACHE, if set and nonempty.
    static std::optional<std::filesystem::path> cache_dir_from_env();

    static std::filesystem::path cache_file(const std::filesystem::path& dir, int r);
    /// Returns nullopt for a missing, malformed, or stale cache file.
    static std::optional<KerovPolynomial> load(const std::filesystem::path& file, int r);
    static void store(const std::filesystem::path& dir, const KerovPolynomial& k);

private:
    KerovPolynomial produce(int r) const;

    Options options_;
    std::mutex mutex_;
    std::map<int, std::shared_future<std::shared_ptr<const KerovPolynomial>>> entries_;
};

}  // namespace kerovlab
