#include "bcva/mc_core.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace bcva::detail {

void validate_config(const McConfig& config) {
    require(config.n_paths >= 2, "McConfig: n_paths must be at least 2");
    require(config.chunk_size >= 1, "McConfig: chunk_size must be at least 1");
}

std::uint64_t chunk_count(const McConfig& config) noexcept {
    return (config.n_paths + config.chunk_size - 1) / config.chunk_size;
}

void for_each_chunk(std::uint64_t n_chunks, unsigned threads,
                    const std::function<void(std::uint64_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));

    std::atomic<std::uint64_t> next{0};
    // Chunks above the lowest failure so far are skipped; chunks below still run so the
    // reported failure does not depend on scheduling.
    std::atomic<std::uint64_t> first_failure{n_chunks};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto work = [&] {
        for (;;) {
            const std::uint64_t chunk = next.fetch_add(1);
            if (chunk >= n_chunks) return;
            if (chunk > first_failure.load()) continue;
            try {
                body(chunk);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (chunk < first_failure.load()) {
                    first_failure = chunk;
                    error = std::current_exception();
                }
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace bcva::detail
