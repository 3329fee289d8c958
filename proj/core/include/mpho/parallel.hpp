#pragma once

#include <cstddef>
#include <functional>

namespace mpho {

/// Number of worker threads used by grid sweeps, pairwise-distance loops and
/// the KDE. Defaults to the hardware concurrency; 1 disables threading.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count). Work is split into contiguous chunks;
/// bodies must write only to their own index (results are deterministic).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace mpho
