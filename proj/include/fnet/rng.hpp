#pragma once

#include <cstdint>
#include <random>

namespace fnet {

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent stream `index` under `master`, separated by `domain` so that
/// different consumers of the same master seed never share a stream.
[[nodiscard]] inline std::mt19937_64 make_stream(std::uint64_t master, std::uint64_t domain,
                                                 std::uint64_t index) {
    const std::uint64_t a = mix64(master ^ mix64(domain));
    const std::uint64_t b = mix64(a ^ mix64(index + 0x632BE59BD9B4E019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

namespace stream_domain {
inline constexpr std::uint64_t kBootstrap = 0xB0075;
inline constexpr std::uint64_t kShuffle = 0x5F1E;
inline constexpr std::uint64_t kFactorModel = 0xFAC7;
inline constexpr std::uint64_t kAsyncModel = 0xA5C;
}  // namespace stream_domain

}  // namespace fnet
