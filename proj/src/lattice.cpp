#include "percolab/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace percolab {

namespace detail {

void require_dimension(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1, got " + std::to_string(d));
}

}  // namespace detail

Vertex origin(int d) {
  detail::require_dimension(d);
  return Vertex(static_cast<std::size_t>(d), 0);
}

bool is_origin(const Vertex& v) {
  return std::all_of(v.begin(), v.end(), [](Coord c) { return c == 0; });
}

std::uint64_t l1_norm(const Vertex& v) {
  std::uint64_t sum = 0;
  for (Coord c : v) {
    // |INT64_MIN| does not fit in int64, go through uint64 arithmetic.
    std::uint64_t mag = c < 0 ? ~static_cast<std::uint64_t>(c) + 1 : static_cast<std::uint64_t>(c);
    if (__builtin_add_overflow(sum, mag, &sum)) {
      throw std::overflow_error("l1_norm overflows uint64");
    }
  }
  return sum;
}

DirectionStep up_step(const Vertex& v, int axis) {
  if (axis < 0 || static_cast<std::size_t>(axis) >= v.size()) {
    throw std::out_of_range("axis out of range");
  }
  return {axis, v[static_cast<std::size_t>(axis)] >= 0 ? +1 : -1};
}

DirectionStep down_step(const Vertex& v, int axis) {
  DirectionStep s = up_step(v, axis);
  s.sign = -s.sign;
  return s;
}

Vertex apply_step(const Vertex& v, DirectionStep s) {
  Vertex w = v;
  Coord& c = w.at(static_cast<std::size_t>(s.axis));
  if (__builtin_add_overflow(c, static_cast<Coord>(s.sign), &c)) {
    throw std::overflow_error("coordinate overflow applying step");
  }
  return w;
}

std::vector<Vertex> up_neighbors(const Vertex& v) {
  std::vector<Vertex> out;
  out.reserve(v.size());
  for (int i = 0; i < static_cast<int>(v.size()); ++i) out.push_back(apply_step(v, up_step(v, i)));
  return out;
}

std::vector<Vertex> down_neighbors(const Vertex& v) {
  std::vector<Vertex> out;
  out.reserve(v.size());
  for (int i = 0; i < static_cast<int>(v.size()); ++i) out.push_back(apply_step(v, down_step(v, i)));
  return out;
}

std::vector<Vertex> neighbors(const Vertex& v) {
  std::vector<Vertex> out = up_neighbors(v);
  std::vector<Vertex> down = down_neighbors(v);
  out.insert(out.end(), std::make_move_iterator(down.begin()), std::make_move_iterator(down.end()));
  return out;
}

bool arc_contains(const Vertex& v, std::uint64_t k) { return l1_norm(v) == k; }

bool positive_face_contains(const Vertex& v, std::uint64_t k) {
  std::uint64_t sum = 0;
  for (Coord c : v) {
    if (c < 0) return false;
    sum += static_cast<std::uint64_t>(c);
  }
  return sum == k;
}

namespace {

bigint binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  bigint result = 1;
  for (std::uint64_t i = 0; i < r; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

}  // namespace

bigint arc_size(int d, std::uint64_t k) {
  detail::require_dimension(d);
  if (k == 0) return 1;
  // Choose j axes with nonzero coordinate, a sign for each, and a
  // composition of k into j positive parts.
  bigint total = 0;
  std::uint64_t ud = static_cast<std::uint64_t>(d);
  for (std::uint64_t j = 1; j <= std::min<std::uint64_t>(ud, k); ++j) {
    total += binomial(ud, j) * (bigint(1) << j) * binomial(k - 1, j - 1);
  }
  return total;
}

bigint ball_size(int d, std::uint64_t k) {
  bigint total = 0;
  for (std::uint64_t j = 0; j <= k; ++j) total += arc_size(d, j);
  return total;
}

namespace {

void enumerate_rec(int d, int k, bool full_ball, Vertex& prefix, int remaining,
                   std::vector<Vertex>& out) {
  int depth = static_cast<int>(prefix.size());
  if (depth == d) {
    if (full_ball || remaining == 0) out.push_back(prefix);
    return;
  }
  // Last coordinate must absorb the leftover norm exactly when enumerating
  // an arc; interior coordinates range freely within the budget.
  for (Coord c = -remaining; c <= remaining; ++c) {
    if (!full_ball && depth == d - 1 && std::abs(c) != remaining) continue;
    prefix.push_back(c);
    enumerate_rec(d, k, full_ball, prefix, remaining - static_cast<int>(std::abs(c)), out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Vertex> enumerate_ball(int d, int k) {
  detail::require_dimension(d);
  if (k < 0) throw std::invalid_argument("ball radius must be >= 0");
  std::vector<Vertex> out;
  Vertex prefix;
  prefix.reserve(static_cast<std::size_t>(d));
  enumerate_rec(d, k, /*full_ball=*/true, prefix, k, out);
  return out;
}

std::vector<Vertex> enumerate_arc(int d, int k) {
  detail::require_dimension(d);
  if (k < 0) throw std::invalid_argument("arc radius must be >= 0");
  std::vector<Vertex> out;
  Vertex prefix;
  prefix.reserve(static_cast<std::size_t>(d));
  enumerate_rec(d, k, /*full_ball=*/false, prefix, k, out);
  return out;
}

}  // namespace percolab
