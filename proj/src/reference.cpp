#include "percolab/reference.hpp"

#include <algorithm>
#include <stdexcept>

#include "percolab/lattice.hpp"

namespace percolab::reference {

namespace {

bool endpoint_ok(const Vertex& v, int k, ArcSet arc) {
  auto radius = static_cast<std::uint64_t>(k);
  return arc == ArcSet::positive_face ? positive_face_contains(v, radius)
                                      : arc_contains(v, radius);
}

void walk(const Vertex& v, std::vector<Vertex>& path, int remaining,
          const std::optional<int>& ball_radius,
          const std::optional<int>& target_k, ArcSet arc, bigint& count) {
  if (remaining == 0) {
    if (!target_k || endpoint_ok(v, *target_k, arc)) ++count;
    return;
  }
  for (const Vertex& w : neighbors(v)) {
    if (ball_radius && l1_norm(w) > static_cast<std::uint64_t>(*ball_radius)) continue;
    if (std::find(path.begin(), path.end(), w) != path.end()) continue;
    path.push_back(w);
    walk(w, path, remaining - 1, ball_radius, target_k, arc, count);
    path.pop_back();
  }
}

bigint count_walks(int d, int length, std::optional<int> target_k, ArcSet arc,
                   std::optional<int> ball_radius) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (length < 0) throw std::invalid_argument("length must be >= 0");
  Vertex start = origin(d);
  std::vector<Vertex> path{start};
  bigint count = 0;
  walk(start, path, length, ball_radius, target_k, arc, count);
  return count;
}

}  // namespace

bigint count_monotone_paths(int d, int k) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  // Fixed-sign steps only: +e_i at every vertex.
  bigint count = 0;
  Vertex v = origin(d);
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == k) {
      ++count;
      return;
    }
    for (int axis = 0; axis < d; ++axis) {
      ++v[static_cast<std::size_t>(axis)];
      self(self, depth + 1);
      --v[static_cast<std::size_t>(axis)];
    }
  };
  rec(rec, 0);
  return count;
}

bigint count_saws_with_length(int d, int length, int k, ArcSet arc,
                              std::optional<int> ball_radius) {
  if (k < 0) throw std::invalid_argument("arc radius must be >= 0");
  return count_walks(d, length, k, arc, ball_radius);
}

bigint count_saws_to_arc(int d, int k, int m, ArcSet arc, std::optional<int> ball_radius) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  return reference::count_saws_with_length(d, k + 2 * m, k, arc, ball_radius);
}

bigint total_saw_count(int d, int length, std::optional<int> ball_radius) {
  return count_walks(d, length, std::nullopt, ArcSet::sphere, ball_radius);
}

}  // namespace percolab::reference
