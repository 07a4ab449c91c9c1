#pragma once

#include <array>
#include <cstdint>

namespace fpp {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// Pure function of (key, counter); identical output on every platform.
struct Philox4x32 {
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              std::array<std::uint32_t, 4> ctr) {
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return ctr;
    }

    // 128 random bits for block `block_index` of stream (key, stream_index).
    static std::array<std::uint32_t, 4> bits128(std::uint64_t key,
                                                std::uint64_t stream_index,
                                                std::uint64_t block_index) {
        return block(key, {static_cast<std::uint32_t>(stream_index),
                           static_cast<std::uint32_t>(stream_index >> 32),
                           static_cast<std::uint32_t>(block_index),
                           static_cast<std::uint32_t>(block_index >> 32)});
    }
};

// Uniform double in [0,1) from one 32-bit word.
inline double uniform01(std::uint32_t w) {
    return (static_cast<double>(w) + 0.5) * (1.0 / 4294967296.0);
}

}  // namespace fpp
