#pragma once

#include <array>
#include <cstdint>

namespace bcva {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Pure function of (key, counter); no hidden state.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key) noexcept;
};

/// A substream of uniform, normal and exponential variates.
///
/// The stream keyed by (seed, stream_id) is an independent block of the Philox
/// counter space: the seed is the Philox key, stream_id occupies the high 64 bits
/// of the counter and the draw index the low 64 bits.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id, bool antithetic = false) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 52-bit resolution.
    double uniform() noexcept;
    /// Standard normal via Box-Muller.
    double normal() noexcept;
    /// Unit-rate exponential.
    double exponential() noexcept;

    /// The mirror stream: identical counters, uniforms reflected u -> 1-u and normals negated.
    RandomStream antithetic_twin() const noexcept;

private:
    void refill() noexcept;

    Philox4x32::Key key_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    bool antithetic_;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

}  // namespace bcva
