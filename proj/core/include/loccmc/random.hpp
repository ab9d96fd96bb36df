#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace loccmc {

/// Philox4x64-10 counter-based generator.
///
/// The 128-bit key selects an independent stream and the 256-bit counter
/// indexes blocks within it, so any (seed, stream id) pair can be created
/// directly without jumping. Output matches the Random123 reference (and
/// numpy's `Philox`): the counter is incremented before each block.
class Philox4x64 {
public:
    using result_type = std::uint64_t;
    using Counter = std::array<std::uint64_t, 4>;
    using Key = std::array<std::uint64_t, 2>;

    Philox4x64(Key key, Counter counter = {0, 0, 0, 0}) noexcept
        : key_(key), counter_(counter) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        if (pos_ == 4) {
            increment();
            block_ = encrypt(counter_, key_);
            pos_ = 0;
        }
        return block_[pos_++];
    }

    /// The ten-round bijection applied to one counter block.
    static Counter encrypt(Counter ctr, Key key) noexcept;

    const Key& key() const noexcept { return key_; }
    const Counter& counter() const noexcept { return counter_; }

private:
    void increment() noexcept {
        for (auto& word : counter_) {
            if (++word != 0) break;
        }
    }

    Key key_;
    Counter counter_;
    Counter block_{};
    int pos_ = 4;
};

/// A random stream for one Monte Carlo task: uniform and normal variates on
/// top of Philox. Streams are cheap to create and must not be shared.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
        : engine_({seed, stream_id}) {}

    std::uint64_t next_u64() noexcept { return engine_(); }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound) by Lemire's multiply-shift rejection.
    std::uint64_t uniform_index(std::uint64_t bound) noexcept;

    /// Standard normal via Box-Muller; the second value of each pair is cached.
    double normal() noexcept;

    Philox4x64& engine() noexcept { return engine_; }

private:
    Philox4x64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace loccmc
