#pragma once

#include <cstddef>
#include <functional>

namespace hyperbox {

/// Worker cap for internal parallel loops: the HBX_THREADS environment
/// variable, or the hardware concurrency when unset or 0.
std::size_t thread_budget();

/// Runs body(0) .. body(n-1) across up to thread_budget() threads. Results
/// must be written to per-index slots; the call rethrows the first exception
/// raised by any body.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hyperbox
