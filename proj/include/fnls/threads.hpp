#pragma once

//============================================================================
// threads.hpp -- process-wide worker count for the embarrassingly parallel
// samplers (linking-box certification, family maxima).  Defaults to 1;
// the CLI wires --threads / FNLS_THREADS into set_num_threads.
//============================================================================

#include <cstddef>
#include <functional>

namespace fnls {

void set_num_threads(int n);  // clamped below at 1
int num_threads();

// Run fn(begin, end) over [0, n) split into contiguous chunks, one per
// worker.  Serial when num_threads() == 1 or n is small.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace fnls
