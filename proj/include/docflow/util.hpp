#pragma once

#include <chrono>
#include <cstdint>
#include <functional>

namespace docflow {

/// Global worker-thread cap shared by all parallel stages. 0 restores the
/// hardware default. Thread count never changes numeric results; it only
/// partitions per-pixel work.
void set_max_threads(int n);
int max_threads();

/// Run fn(i) for i in [begin, end), split into contiguous chunks across the
/// worker budget. fn must write only to locations owned by index i.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

/// Chunked variant: fn(chunk_begin, chunk_end) per worker.
void parallel_for_chunks(int begin, int end,
                         const std::function<void(int, int)>& fn);

/// splitmix64 step; used to derive independent per-item seeds from one
/// user seed so results do not depend on evaluation order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

class Timer {
public:
    Timer() : start_(clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }
    void reset() { start_ = clock::now(); }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_;
};

}  // namespace docflow
