// SPDX-License-Identifier: Apache-2.0
#include "circex/rng.hpp"

#include "circex/error.hpp"

namespace circex {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c,
                                           std::array<std::uint32_t, 2> k)
{
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

CounterRng::CounterRng(const StreamId& id)
{
    const std::uint64_t key = splitmix64(id.master_seed);
    key_ = {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    if (id.dimension > std::numeric_limits<std::uint32_t>::max() ||
        id.replication > std::numeric_limits<std::uint32_t>::max())
        throw InvalidArgument("stream dimension and replication must fit in 32 bits");
    // counter = (block, replication, dimension, role): distinct for every stream
    tag_ = {static_cast<std::uint32_t>(id.replication), static_cast<std::uint32_t>(id.dimension),
            static_cast<std::uint32_t>(id.role)};
}

void CounterRng::refill()
{
    if (block_ > std::numeric_limits<std::uint32_t>::max())
        throw InvalidArgument("random stream exhausted (2^32 blocks)");
    out_ = philox4x32_10({static_cast<std::uint32_t>(block_), tag_[0], tag_[1], tag_[2]}, key_);
    ++block_;
    pos_ = 0;
}

CounterRng::result_type CounterRng::operator()()
{
    if (pos_ >= 4)
        refill();
    const std::uint64_t lo = out_[pos_];
    const std::uint64_t hi = out_[pos_ + 1];
    pos_ += 2;
    return lo | (hi << 32);
}

} // namespace circex
