#pragma once

#include <optional>

namespace percolab {

// Worker count precedence: PERCOLAB_THREADS env var, then the explicit
// request, then all hardware threads. All results are worker-count
// invariant; this only affects speed.
int resolve_worker_count(std::optional<int> requested = {});

// Applies the count to the OpenMP runtime.
void apply_worker_count(int workers);

}  // namespace percolab
