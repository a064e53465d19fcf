#include "percolab/threads.hpp"

#include <omp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace percolab {

int resolve_worker_count(std::optional<int> requested) {
  if (const char* env = std::getenv("PERCOLAB_THREADS")) {
    int n = 0;
    try {
      n = std::stoi(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("PERCOLAB_THREADS must be a positive integer");
    }
    if (n < 1) throw std::invalid_argument("PERCOLAB_THREADS must be a positive integer");
    return n;
  }
  if (requested) {
    if (*requested < 1) throw std::invalid_argument("worker count must be >= 1");
    return *requested;
  }
  return omp_get_max_threads();
}

void apply_worker_count(int workers) {
  if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
  omp_set_num_threads(workers);
}

}  // namespace percolab
