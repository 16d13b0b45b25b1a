#pragma once

#include <cstddef>
#include <functional>

namespace apcss {

/// Number of workers to use when the caller passes 0: hardware concurrency,
/// at least 1.
std::size_t default_workers() noexcept;

/// Calls `body(index)` for every index in [0, count) using `workers` threads
/// (0 = default_workers()). Indices are handed out in contiguous blocks; the
/// body must only write state owned by its index. The first exception thrown
/// by any body is rethrown after all workers have stopped.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace apcss
