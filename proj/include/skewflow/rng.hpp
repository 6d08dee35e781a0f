#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace skewflow {

/// One reproducible random stream per (seed, stream index). Monte-Carlo work
/// is cut into fixed-size chunks and chunk c always draws from stream c, so
/// results do not depend on how chunks are spread over threads.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t bits() { return gen_(); }
    /// Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::mt19937_64 gen_;
};

inline constexpr std::size_t kChunkSize = 4096;

inline std::size_t chunk_count(std::size_t n) { return (n + kChunkSize - 1) / kChunkSize; }

/// Calls body(chunk_index, begin, end) for every chunk of [0, n), spread over
/// up to `threads` workers. Bodies must only write chunk-local state.
template <typename Body>
void for_each_chunk(std::size_t n, unsigned threads, Body&& body);

} // namespace skewflow

#include "skewflow/detail/parallel.hpp"
