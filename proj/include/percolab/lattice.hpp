#pragma once

#include <cstdint>
#include <vector>

#include "percolab/bigint.hpp"

namespace percolab {

// Vertex of Z^d as its integer coordinate vector (a_1, ..., a_d).
using Coord = std::int64_t;
using Vertex = std::vector<Coord>;

Vertex origin(int d);
bool is_origin(const Vertex& v);

// L1 norm sum_i |a_i|, i.e. the edge distance from the origin.
// Throws std::overflow_error if the sum does not fit in uint64.
std::uint64_t l1_norm(const Vertex& v);

// A unit step along one axis. axis is 0-based.
struct DirectionStep {
  int axis;
  int sign;  // +1 or -1
};

// The norm-increasing step along `axis` at vertex v: +1 while a_axis >= 0,
// -1 while a_axis < 0. Its reverse is the down step. With this convention
// an up step raises l1_norm by exactly 1 at every vertex; the down step
// lowers it by 1 except on axes sitting at 0, where both unit moves point
// away from the origin.
DirectionStep up_step(const Vertex& v, int axis);
DirectionStep down_step(const Vertex& v, int axis);

Vertex apply_step(const Vertex& v, DirectionStep s);

// The 2d lattice neighbors of v, partitioned by the convention above.
std::vector<Vertex> up_neighbors(const Vertex& v);
std::vector<Vertex> down_neighbors(const Vertex& v);
// All 2d neighbors: up set followed by down set.
std::vector<Vertex> neighbors(const Vertex& v);

// Membership in the arc A_k, read as the full L1 sphere {v : ||v|| = k}.
bool arc_contains(const Vertex& v, std::uint64_t k);

// Membership in the positive-orthant face of the sphere: the arc reached
// from the origin by fixed-sign up steps only (all a_i >= 0, sum a_i = k).
bool positive_face_contains(const Vertex& v, std::uint64_t k);

// |{v : ||v|| = k}| and |{v : ||v|| <= k}|, exact.
bigint arc_size(int d, std::uint64_t k);
bigint ball_size(int d, std::uint64_t k);

// All vertices of the ball ||v|| <= k in lexicographic coordinate order.
// This ordering is the canonical site indexing used by the Monte Carlo
// streams, so it is part of the reproducibility contract.
std::vector<Vertex> enumerate_ball(int d, int k);
// All vertices with ||v|| = k, lexicographic order.
std::vector<Vertex> enumerate_arc(int d, int k);

namespace detail {
void require_dimension(int d);
}

}  // namespace percolab
