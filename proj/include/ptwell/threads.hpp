#pragma once

#include <functional>

namespace ptwell {

/// Worker count: PTWELL_THREADS caps it, 0 or unset means hardware concurrency.
int worker_count();

/// Data-parallel loop over [begin, end); results must be written to disjoint slots
/// so the outcome is schedule-independent.  Runs inline when the range is small.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace ptwell
