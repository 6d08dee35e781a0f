#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "skewflow/rng.hpp"

namespace skewflow {

template <typename Body>
void for_each_chunk(std::size_t n, unsigned threads, Body&& body)
{
    const std::size_t chunks = chunk_count(n);
    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = c * kChunkSize;
        body(c, begin, std::min(n, begin + kChunkSize));
    };
    const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            run_chunk(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) {
                try {
                    run_chunk(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next = chunks;
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace skewflow
