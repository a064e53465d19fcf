#pragma once

#include <optional>

#include "percolab/bigint.hpp"
#include "percolab/enumeration.hpp"

// Naive single-threaded enumeration kept as the independent check on the
// production engine: plain recursion over lattice neighbors, visited test by
// scanning the path, no pruning, no budget. Deliberately slow and obvious.
namespace percolab::reference {

bigint count_monotone_paths(int d, int k);

bigint count_saws_with_length(int d, int length, int k, ArcSet arc,
                              std::optional<int> ball_radius = {});

bigint count_saws_to_arc(int d, int k, int m, ArcSet arc,
                         std::optional<int> ball_radius = {});

bigint total_saw_count(int d, int length, std::optional<int> ball_radius = {});

}  // namespace percolab::reference
