#include "kerovlab/concurrency.hpp"

namespace kerovlab {

namespace {
std::atomic<unsigned> g_default_jobs{0};
}

void set_default_jobs(unsigned jobs) noexcept { g_default_jobs = jobs; }

unsigned default_jobs() noexcept {
    unsigned jobs = g_default_jobs.load();
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    return jobs;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned jobs) {
    if (jobs == 0) jobs = default_jobs();
    std::size_t workers = std::min<std::size_t>(jobs, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace kerovlab
