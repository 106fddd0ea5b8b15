#pragma once

#include <array>
#include <cstdint>

namespace tikreg {

// Philox4x32-10 counter-based generator. Key is the 64-bit seed split into
// two 32-bit words; counter words c2:c3 carry the substream id so that
// independent copies of an experiment draw from disjoint streams, and c0:c1
// count blocks within a stream. Outputs are consumed word by word.
class Philox {
public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Standard normal via Box-Muller; second variate of each pair is cached.
    double normal();

    // Raw 4-word block for a given counter/key, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 4;  // empty
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace tikreg
