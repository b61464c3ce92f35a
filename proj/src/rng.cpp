#include "rng.hpp"

#include <cmath>

namespace cdsar {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
#ifdef __SIZEOF_INT128__
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    return static_cast<std::uint64_t>(p);
#else
    const std::uint64_t a_lo = a & 0xFFFFFFFFULL, a_hi = a >> 32;
    const std::uint64_t b_lo = b & 0xFFFFFFFFULL, b_hi = b >> 32;
    const std::uint64_t t = a_hi * b_lo + ((a_lo * b_lo) >> 32);
    const std::uint64_t u = a_lo * b_hi + (t & 0xFFFFFFFFULL);
    hi = a_hi * b_hi + (t >> 32) + (u >> 32);
    return a * b;
#endif
}

} // namespace

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed + (salt + 1) * kWeyl0);
}

Philox::Philox(key_type key, counter_type counter) : key_(key), ctr_(counter) {}

std::array<std::uint64_t, 4> Philox::block(const counter_type& counter, const key_type& key) {
    std::uint64_t c0 = counter[0], c1 = counter[1], c2 = counter[2], c3 = counter[3];
    std::uint64_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        std::uint64_t hi0;
        const std::uint64_t lo0 = mulhilo(kPhiloxM0, c0, hi0);
        std::uint64_t hi1;
        const std::uint64_t lo1 = mulhilo(kPhiloxM1, c2, hi1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
    }
    return {c0, c1, c2, c3};
}

void Philox::refill() {
    // Counter is bumped before the block, with carry; matches the reference
    // stream for a freshly seeded generator.
    for (int i = 0; i < 4; ++i) {
        if (++ctr_[i] != 0) break;
    }
    buf_ = block(ctr_, key_);
    buf_pos_ = 0;
}

std::uint64_t Philox::next_u64() {
    if (buf_pos_ >= 4) refill();
    return buf_[buf_pos_++];
}

double Philox::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Philox::next_gaussian() {
    if (has_gauss_) {
        has_gauss_ = false;
        return gauss_cache_;
    }
    // Box-Muller on (0,1] x [0,1); no rejection, so stream consumption is a
    // fixed two uniforms per pair on every platform.
    const double u1 = 1.0 - next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * 3.14159265358979323846 * u2;
    gauss_cache_ = r * std::sin(ang);
    has_gauss_ = true;
    return r * std::cos(ang);
}

} // namespace cdsar
