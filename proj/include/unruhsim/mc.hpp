#pragma once

#include <cstdint>
#include <type_traits>
#include <vector>

#include "unruhsim/rng.hpp"

namespace unruhsim::mc {

// Monte Carlo trials are decomposed into fixed-size logical blocks. Each block
// owns an RNG stream seeded from (run seed, block index), and partial results
// are reduced in block order, so the aggregate is a pure function of
// (trials, seed) regardless of how many worker threads execute the blocks.
// run_blocks_serial is the reference path; run_blocks_parallel must produce a
// bit-identical partial vector.
inline constexpr std::uint64_t kBlockSize = 8192;

inline std::uint64_t block_seed(std::uint64_t run_seed, std::uint64_t block) {
    return splitmix64(run_seed ^ block);
}

inline std::uint64_t block_count(std::uint64_t trials) {
    return (trials + kBlockSize - 1) / kBlockSize;
}

struct BlockRange {
    std::uint64_t begin;
    std::uint64_t end;  // exclusive trial index
    std::uint64_t size() const { return end - begin; }
};

inline BlockRange block_range(std::uint64_t trials, std::uint64_t block) {
    const std::uint64_t begin = block * kBlockSize;
    const std::uint64_t end =
        (begin + kBlockSize < trials) ? begin + kBlockSize : trials;
    return BlockRange{begin, end};
}

template <typename Fn>
using block_result_t = std::invoke_result_t<Fn&, Rng&, BlockRange>;

template <typename Fn>
auto run_blocks_serial(std::uint64_t trials, std::uint64_t seed, Fn&& fn)
    -> std::vector<block_result_t<Fn>> {
    const std::uint64_t blocks = block_count(trials);
    std::vector<block_result_t<Fn>> parts;
    parts.reserve(blocks);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        Rng rng(block_seed(seed, b));
        parts.push_back(fn(rng, block_range(trials, b)));
    }
    return parts;
}

template <typename Fn>
auto run_blocks_parallel(std::uint64_t trials, std::uint64_t seed, int threads,
                         Fn&& fn) -> std::vector<block_result_t<Fn>> {
    const std::uint64_t blocks = block_count(trials);
    std::vector<block_result_t<Fn>> parts(blocks);
    const long long n = static_cast<long long>(blocks);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long b = 0; b < n; ++b) {
        Rng rng(block_seed(seed, static_cast<std::uint64_t>(b)));
        parts[static_cast<std::size_t>(b)] =
            fn(rng, block_range(trials, static_cast<std::uint64_t>(b)));
    }
    return parts;
}

// threads <= 1 selects the serial reference path.
template <typename Fn>
auto run_blocks(std::uint64_t trials, std::uint64_t seed, int threads, Fn&& fn)
    -> std::vector<block_result_t<Fn>> {
    if (threads <= 1) {
        return run_blocks_serial(trials, seed, fn);
    }
    return run_blocks_parallel(trials, seed, threads, fn);
}

}  // namespace unruhsim::mc
