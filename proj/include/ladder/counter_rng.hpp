#pragma once

#include <array>
#include <cstdint>

namespace ladder {

/// Philox4x32-10 block cipher (Salmon et al., SC'11): maps a 128-bit counter
/// and 64-bit key to 128 random bits. Stateless, so any (key, counter) pair
/// can be evaluated on any thread.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t prod0 = std::uint64_t{kMul0} * counter[0];
            const std::uint64_t prod1 = std::uint64_t{kMul1} * counter[2];
            const auto hi0 = static_cast<std::uint32_t>(prod0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(prod0);
            const auto hi1 = static_cast<std::uint32_t>(prod1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(prod1);
            counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
        }
        return counter;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

/// Uniform stream for one Monte Carlo trial: key = seed, counter = (trial,
/// block). Two 64-bit draws per Philox block.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          trial_(trial) {}

    std::uint64_t next_u64() noexcept {
        if (slot_ == 2) refill();
        return buffer_[slot_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    void refill() noexcept {
        const auto out = Philox4x32::generate(
            {static_cast<std::uint32_t>(trial_), static_cast<std::uint32_t>(trial_ >> 32),
             static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32)},
            key_);
        buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
        buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
        ++block_;
        slot_ = 0;
    }

    Philox4x32::Key key_;
    std::uint64_t trial_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int slot_ = 2;
};

}  // namespace ladder
