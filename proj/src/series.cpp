#include "percolab/series.hpp"

#include <cmath>
#include <stdexcept>

#include "percolab/lattice.hpp"

namespace percolab {

const char* to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::lower_psi: return "lower_psi";
    case SeriesKind::upper_bound: return "upper_bound";
    case SeriesKind::empirical: return "empirical";
  }
  return "unknown";
}

namespace {

void validate(int d, double p, int k, bool open_interval) {
  detail::require_dimension(d);
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (!(p >= 0.0) || p > 1.0 || (open_interval && p == 1.0)) {
    throw std::domain_error("p outside its valid range");
  }
}

// x^n by repeated squaring in extended precision.
long double pow_int(long double x, int n) {
  long double result = 1.0L;
  long double base = x;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) result *= base;
    base *= base;
  }
  return result;
}

}  // namespace

SeriesValue psi_lower(int d, double p, int k) {
  validate(d, p, k, false);
  long double v = pow_int(static_cast<long double>(p) * d, k);
  return {d, p, k, SeriesKind::lower_psi, std::nullopt, static_cast<double>(v)};
}

UpperBoundValue upper_bound_series(int d, double p, int k, int truncation) {
  validate(d, p, k, true);
  if (truncation < 1) throw std::invalid_argument("truncation must be >= 1");

  long double dp_k = pow_int(static_cast<long double>(p) * d, k);
  long double x = static_cast<long double>(p) * p;  // p^2

  long double partial = 1.0L;
  long double x_i = 1.0L;
  for (int i = 1; i <= truncation; ++i) {
    x_i *= x;
    partial += i * x_i;
  }

  long double one_minus = 1.0L - x;
  long double closed = 1.0L + x / (one_minus * one_minus);

  UpperBoundValue out;
  out.truncated = {d, p, k, SeriesKind::upper_bound, truncation, static_cast<double>(dp_k * partial)};
  out.closed_form = {d, p, k, SeriesKind::upper_bound, std::nullopt, static_cast<double>(dp_k * closed)};
  return out;
}

SeriesValue empirical_psi(const CountTable& counts, int d, double p, int k, int m_max) {
  validate(d, p, k, false);
  if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");

  long double total = 0.0L;
  for (int i = 0; i <= m_max; ++i) {
    int length = k + 2 * i;
    const bigint& n = counts.at({d, k, length});
    total += n.convert_to<long double>() * pow_int(static_cast<long double>(p), length);
  }
  return {d, p, k, SeriesKind::empirical, m_max, static_cast<double>(total)};
}

}  // namespace percolab
