#pragma once

#include <optional>
#include <string>

#include "percolab/enumeration.hpp"

namespace percolab {

enum class SeriesKind {
  lower_psi,    // psi_k = (p d)^k
  upper_bound,  // (d p)^k (1 + sum_{i>=1} i p^{2i}), truncated or closed
  empirical,    // sum_i n_{k+2i}(A_k) p^{k+2i} with exact counts
};

const char* to_string(SeriesKind kind);

// All expectations are conditioned on the origin being open: a walk of
// length L contributes p^L, one factor per vertex beyond the origin.
struct SeriesValue {
  int d = 1;
  double p = 0.0;
  int k = 0;
  SeriesKind kind = SeriesKind::lower_psi;
  std::optional<int> truncation;  // empty for closed forms
  double value = 0.0;
};

// (p d)^k, the expected number of open monotone k-paths.
SeriesValue psi_lower(int d, double p, int k);

struct UpperBoundValue {
  SeriesValue truncated;    // partial sum up to i = truncation
  SeriesValue closed_form;  // (dp)^k (1 + p^2 / (1 - p^2)^2)
};

// Requires p in [0,1): the closed form diverges at p = 1.
UpperBoundValue upper_bound_series(int d, double p, int k, int truncation);

// sum_{i=0..m_max} n_{k+2i} p^{k+2i} from exact counts in `counts`.
// Throws missing_count if a needed entry is absent.
SeriesValue empirical_psi(const CountTable& counts, int d, double p, int k, int m_max);

}  // namespace percolab
