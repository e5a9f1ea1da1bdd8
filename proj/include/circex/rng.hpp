// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random streams. A stream is a pure function of
// (master seed, dimension, replication, role): any replication can be
// regenerated in isolation, and the draw a worker sees never depends on
// which thread runs it or in what order.
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace circex {

/// Philox4x32 with 10 rounds.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

enum class StreamRole : std::uint32_t { Entries = 0, Smoothing = 1, Oracle = 2 };

struct StreamId {
    std::uint64_t master_seed = 0;
    std::uint64_t dimension = 0;
    std::uint64_t replication = 0;
    StreamRole role = StreamRole::Entries;
};

/// UniformRandomBitGenerator over one keyed Philox stream.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(const StreamId& id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    std::uint64_t blocks_consumed() const noexcept { return block_; }

private:
    void refill();

    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 3> tag_{};
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> out_{};
    int pos_ = 4;
};

} // namespace circex
