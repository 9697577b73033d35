#include "kerovlab/kerov_cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "kerovlab/concurrency.hpp"

namespace kerovlab {

namespace fs = std::filesystem;

KerovProvider::KerovProvider(Options options) : options_(std::move(options)) {}

std::optional<fs::path> KerovProvider::cache_dir_from_env() {
    const char* env = std::getenv("KEROVLAB_CACHE");
    if (env == nullptr || *env == '\0') return std::nullopt;
    return fs::path(env);
}

fs::path KerovProvider::cache_file(const fs::path& dir, int r) { return dir / ("kerov_r" + std::to_string(r) + ".json"); }

std::optional<KerovPolynomial> KerovProvider::load(const fs::path& file, int r) {
    std::ifstream in(file);
    if (!in) return std::nullopt;
    try {
        const nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
        if (j.at("format_version").get<int>() != kFormatVersion || j.at("r").get<int>() != r) return std::nullopt;
        KerovPolynomial k;
        k.r = r;
        for (const auto& term : j.at("terms"))
            k.poly.add_term(Partition(term.at("partition").get<std::vector<int>>()),
                            parse_rational(term.at("coef").get<std::string>()));
        if (!k.monic_top()) return std::nullopt;
        k.refresh_findings();
        return k;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void KerovProvider::store(const fs::path& dir, const KerovPolynomial& k) {
    fs::create_directories(dir);
    const nlohmann::ordered_json j = {{"format_version", kFormatVersion}, {"r", k.r}, {"terms", k.poly.terms_json()}};
    std::ostringstream tag;
    tag << ".tmp." << ::getpid() << "." << std::this_thread::get_id();
    const fs::path target = cache_file(dir, k.r);
    const fs::path temp = target.string() + tag.str();
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write cache file " + temp.string());
        out << j.dump() << '\n';
        if (!out.flush()) throw Error("cannot write cache file " + temp.string());
    }
    fs::rename(temp, target);
}

KerovPolynomial KerovProvider::produce(int r) const {
    if (options_.cache_dir) {
        if (auto cached = load(cache_file(*options_.cache_dir, r), r)) return *cached;
    }
    KerovPolynomial k = compute_kerov(r, options_.interpolation);
    if (options_.cache_dir) store(*options_.cache_dir, k);
    return k;
}

const KerovPolynomial& KerovProvider::get(int r) {
    std::shared_future<std::shared_ptr<const KerovPolynomial>> future;
    std::optional<std::promise<std::shared_ptr<const KerovPolynomial>>> promise;
    {
        std::lock_guard lock(mutex_);
        auto it = entries_.find(r);
        if (it == entries_.end()) {
            promise.emplace();
            it = entries_.emplace(r, promise->get_future().share()).first;
        }
        future = it->second;
    }
    if (promise) {
        try {
            promise->set_value(std::make_shared<const KerovPolynomial>(produce(r)));
        } catch (...) {
            promise->set_exception(std::current_exception());
        }
    }
    return *future.get();
}

void KerovProvider::prefetch(std::span<const int> rs, unsigned jobs) {
    parallel_for(rs.size(), [&](std::size_t i) { get(rs[i]); }, jobs);
}

}  // namespace kerovlab
