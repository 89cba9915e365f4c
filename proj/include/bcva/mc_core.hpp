#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

#include "bcva/errors.hpp"
#include "bcva/random.hpp"

namespace bcva {

/// Simulation settings. Results are a pure function of these fields; the number of
/// worker threads is passed separately and never changes a result.
struct McConfig {
    std::uint64_t n_paths = 1'000'000;
    std::uint64_t seed = 20110201;
    std::uint64_t chunk_size = 1u << 16;
    /// Each sample becomes the average of the sampler on a stream and on its antithetic twin.
    bool antithetic = false;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

namespace detail {

/// Streaming first and second moments in extended precision (Welford / Chan et al.).
struct Moments {
    long double count = 0;
    long double mean = 0;
    long double m2 = 0;

    void add(long double x) noexcept {
        count += 1;
        const long double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) noexcept {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const long double total = count + other.count;
        const long double delta = other.mean - mean;
        mean += delta * (other.count / total);
        m2 += other.m2 + delta * delta * (count * other.count / total);
        count = total;
    }

    McEstimate finish() const noexcept {
        McEstimate e;
        e.n = static_cast<std::uint64_t>(count);
        e.mean = static_cast<double>(mean);
        e.std_error = count > 1 ? static_cast<double>(std::sqrt(m2 / (count - 1) / count)) : 0.0;
        return e;
    }
};

void validate_config(const McConfig& config);

std::uint64_t chunk_count(const McConfig& config) noexcept;

/// Runs body(chunk) for every chunk index in [0, n_chunks) on up to `threads` workers
/// (0 = hardware concurrency). If any chunk throws, the exception of the lowest
/// failing chunk index is rethrown after all workers stop.
void for_each_chunk(std::uint64_t n_chunks, unsigned threads,
                    const std::function<void(std::uint64_t)>& body);

}  // namespace detail

/// Monte Carlo estimate of N expectations from one sampler evaluated on shared draws.
///
/// `sampler(RandomStream&)` returns std::array<double, N>. Chunk k draws from the
/// substream (seed, k); chunk moments are merged in chunk order.
template <std::size_t N, class Sampler>
std::array<McEstimate, N> estimate_many(Sampler&& sampler, const McConfig& config,
                                        unsigned threads = 1) {
    detail::validate_config(config);
    const std::uint64_t n_chunks = detail::chunk_count(config);
    std::vector<std::array<detail::Moments, N>> partials(n_chunks);

    detail::for_each_chunk(n_chunks, threads, [&](std::uint64_t chunk) {
        const std::uint64_t begin = chunk * config.chunk_size;
        const std::uint64_t end = std::min(begin + config.chunk_size, config.n_paths);
        RandomStream stream(config.seed, chunk);
        auto& moments = partials[chunk];
        for (std::uint64_t i = begin; i < end; ++i) {
            std::array<double, N> sample;
            if (config.antithetic) {
                RandomStream twin = stream.antithetic_twin();
                const std::array<double, N> plus = sampler(stream);
                const std::array<double, N> minus = sampler(twin);
                for (std::size_t j = 0; j < N; ++j) sample[j] = 0.5 * (plus[j] + minus[j]);
            } else {
                sample = sampler(stream);
            }
            for (std::size_t j = 0; j < N; ++j) {
                if (!std::isfinite(sample[j])) {
                    throw NumericalFailure("non-finite Monte Carlo sample in chunk " +
                                           std::to_string(chunk));
                }
                moments[j].add(sample[j]);
            }
        }
    });

    std::array<detail::Moments, N> total{};
    for (const auto& chunk : partials) {
        for (std::size_t j = 0; j < N; ++j) total[j].merge(chunk[j]);
    }
    std::array<McEstimate, N> result;
    for (std::size_t j = 0; j < N; ++j) result[j] = total[j].finish();
    return result;
}

/// Single-output convenience: `sampler(RandomStream&)` returns double.
template <class Sampler>
McEstimate estimate(Sampler&& sampler, const McConfig& config, unsigned threads = 1) {
    return estimate_many<1>(
        [&sampler](RandomStream& stream) { return std::array<double, 1>{sampler(stream)}; },
        config, threads)[0];
}

}  // namespace bcva
