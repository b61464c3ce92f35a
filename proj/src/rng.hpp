#pragma once

#include <array>
#include <cstdint>

namespace cdsar {

// splitmix64 finalizer; bijective on uint64.
std::uint64_t mix64(std::uint64_t z);

// Decorrelated child seed for (seed, salt); used to give every sweep point
// its own master seed.
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t salt);

// Philox4x64-10 counter-based generator (Salmon et al., Random123), with
// buffering, counter pre-increment, and 53-bit uniform conversion chosen to
// reproduce numpy's Philox bit stream for the same key and counter.
// Distinct keys yield statistically independent streams, so parallel trials
// simply take key = {seed, trial}.
class Philox {
public:
    using key_type = std::array<std::uint64_t, 2>;
    using counter_type = std::array<std::uint64_t, 4>;

    explicit Philox(key_type key, counter_type counter = {0, 0, 0, 0});

    static Philox for_trial(std::uint64_t seed, std::uint64_t trial) {
        return Philox(key_type{seed, trial});
    }

    // Raw block function, one application of the 10-round bijection.
    static std::array<std::uint64_t, 4> block(const counter_type& counter, const key_type& key);

    std::uint64_t next_u64();
    double next_uniform();  // [0, 1), 53-bit
    double next_gaussian(); // standard normal via Box-Muller, second value cached

private:
    void refill();

    key_type key_;
    counter_type ctr_;
    std::array<std::uint64_t, 4> buf_{};
    int buf_pos_ = 4;
    double gauss_cache_ = 0.0;
    bool has_gauss_ = false;
};

} // namespace cdsar
