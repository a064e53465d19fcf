#pragma once

namespace percolab {

inline constexpr const char* kToolName = "percolab";
inline constexpr const char* kToolVersion = "0.1.0";

// Counter-based generator used for all Monte Carlo streams (see rng.hpp).
inline constexpr const char* kRngAlgorithm = "philox4x64-10";

}  // namespace percolab
