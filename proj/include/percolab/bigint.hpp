#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace percolab {

// Exact arbitrary-precision count. Path counts and d^k bounds overflow
// 64-bit integers quickly, and exactness is the whole point here.
using bigint = boost::multiprecision::cpp_int;

}  // namespace percolab
