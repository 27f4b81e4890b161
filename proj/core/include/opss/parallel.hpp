// parallel.hpp — deterministic parallel map over an index range
//
// Workers receive statically chunked index ranges, so each index always writes
// the same output slot and results do not depend on the worker count.

#pragma once

#include <cstddef>
#include <functional>

namespace opss {

// Number of workers used when a call site passes 0. Defaults to the hardware
// concurrency; the CLI overrides it from --workers.
int default_workers();
void set_default_workers(int workers);

// Runs body(i) for i in [0, n). Exceptions are captured and the first one
// (lowest starting chunk) is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int workers = 0);

} // namespace opss
