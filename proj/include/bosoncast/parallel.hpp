#pragma once

#include <cstddef>
#include <functional>

namespace bosoncast {

/// Worker threads for internal parallel loops: hardware concurrency, capped
/// by the BOSONCAST_THREADS environment variable when it is set.
int worker_count();

/// Runs body(i) for i in [0, count) across worker_count() threads. Bodies must
/// write only to their own slot; the first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace bosoncast
