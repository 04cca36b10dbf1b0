#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace lspec {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// Stateless: every 128-bit block is a pure function of (key, counter), so
// streams can be evaluated in any order and from any thread with identical
// results.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);
};

// One logical stream of a seeded generator. `tag` separates independent
// domains under the same seed (noise entries, factors, loadings, ...);
// (hi, lo, slot) index the draw inside the domain. A panel column k draws
// with hi = k, giving the per-column substream layout.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint32_t tag) : seed_(seed), tag_(tag) {}

    // Two independent uniforms in [0,1) from one Philox block.
    std::pair<double, double> uniform2(std::uint32_t hi, std::uint32_t lo,
                                       std::uint32_t slot = 0) const;

    // Box-Muller pair of independent standard normals.
    std::pair<double, double> normal2(std::uint32_t hi, std::uint32_t lo,
                                      std::uint32_t slot = 0) const;

    // Rademacher sign (+1/-1 with equal probability).
    double sign(std::uint32_t hi, std::uint32_t lo, std::uint32_t slot = 0) const;

  private:
    std::uint64_t seed_;
    std::uint32_t tag_;
};

namespace rngtag {
inline constexpr std::uint32_t kNoise = 0x4e4f4953u;    // panel innovations
inline constexpr std::uint32_t kFactor = 0x46414354u;   // factor series
inline constexpr std::uint32_t kLoading = 0x4c4f4144u;  // loading matrices
} // namespace rngtag

} // namespace lspec
