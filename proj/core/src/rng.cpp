#include "lspec/rng.hpp"

#include <cmath>

namespace lspec {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> round_once(const std::array<std::uint32_t, 4>& c,
                                               const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
    const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
    const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline double u01(std::uint64_t bits) {
    // 53 top bits -> [0, 1)
    return double(bits >> 11) * 0x1.0p-53;
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

} // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    ctr = round_once(ctr, key);
    for (int r = 1; r < 10; ++r) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
        ctr = round_once(ctr, key);
    }
    return ctr;
}

std::pair<double, double> CounterRng::uniform2(std::uint32_t hi, std::uint32_t lo,
                                               std::uint32_t slot) const {
    const std::array<std::uint32_t, 2> key{std::uint32_t(seed_), std::uint32_t(seed_ >> 32)};
    const std::array<std::uint32_t, 4> ctr{lo, hi, slot, tag_};
    const auto out = Philox4x32::block(ctr, key);
    const std::uint64_t a = (std::uint64_t(out[0]) << 32) | out[1];
    const std::uint64_t b = (std::uint64_t(out[2]) << 32) | out[3];
    return {u01(a), u01(b)};
}

std::pair<double, double> CounterRng::normal2(std::uint32_t hi, std::uint32_t lo,
                                              std::uint32_t slot) const {
    const auto [u1, u2] = uniform2(hi, lo, slot);
    // 1-u1 in (0,1] keeps the log finite
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

double CounterRng::sign(std::uint32_t hi, std::uint32_t lo, std::uint32_t slot) const {
    const auto [u1, u2] = uniform2(hi, lo, slot);
    (void)u2;
    return u1 < 0.5 ? 1.0 : -1.0;
}

} // namespace lspec
