#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace gkz {

/// Worker count used by parallel_for; 0 selects the hardware concurrency.
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Results must be written to per-index slots;
/// the first exception by index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gkz
