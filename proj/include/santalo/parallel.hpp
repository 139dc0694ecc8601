#pragma once

#include <cstddef>
#include <functional>

namespace santalo::par {

/// Number of worker threads: hardware concurrency, optionally capped by the
/// SANTALO_LAB_THREADS environment variable (read on every call).  The cap
/// never changes results, only wall time.
std::size_t worker_count();

/// Runs f(i) for i in [0, n) on up to worker_count() threads.  Callers store
/// per-index results and reduce them in index order themselves, which keeps
/// every reduction bit-identical no matter how many workers ran.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace santalo::par
