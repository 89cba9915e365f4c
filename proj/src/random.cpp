#include "bcva/random.hpp"

#include <cmath>

namespace bcva {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id, bool antithetic) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_id_(stream_id),
      antithetic_(antithetic) {}

void RandomStream::refill() noexcept {
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block_),
                                  static_cast<std::uint32_t>(block_ >> 32),
                                  static_cast<std::uint32_t>(stream_id_),
                                  static_cast<std::uint32_t>(stream_id_ >> 32)};
    buffer_ = Philox4x32::generate(ctr, key_);
    ++block_;
    used_ = 0;
}

std::uint64_t RandomStream::next_u64() noexcept {
    if (used_ >= 4) refill();
    const std::uint64_t lo = buffer_[used_];
    const std::uint64_t hi = buffer_[used_ + 1];
    used_ += 2;
    return (hi << 32) | lo;
}

double RandomStream::uniform() noexcept {
    // (k + 0.5) / 2^52 lies strictly inside (0, 1), and u -> 1 - u is exact on this grid.
    const double u = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    return antithetic_ ? 1.0 - u : u;
}

double RandomStream::normal() noexcept {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    // Draw the Box-Muller uniforms unreflected so the antithetic twin yields exactly -z.
    const double u1 = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    const double u2 = (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    double z0 = radius * std::cos(angle);
    double z1 = radius * std::sin(angle);
    if (antithetic_) {
        z0 = -z0;
        z1 = -z1;
    }
    spare_normal_ = z1;
    has_spare_normal_ = true;
    return z0;
}

double RandomStream::exponential() noexcept {
    return -std::log(uniform());
}

RandomStream RandomStream::antithetic_twin() const noexcept {
    RandomStream twin = *this;
    twin.antithetic_ = !antithetic_;
    if (twin.has_spare_normal_) twin.spare_normal_ = -spare_normal_;
    return twin;
}

}  // namespace bcva
