#pragma once

#include <array>
#include <cstdint>

namespace percolab {

// Philox4x64-10 keyed counter block cipher (Random123 constants). Every
// random number in the project is a pure function of (seed, stream purpose,
// counter), which is what makes trial results independent of scheduling and
// lets a p-sweep share variates site-by-site for the coupling check.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

// Map a 64-bit word to [0,1) using the top 53 bits. Monotone in the word,
// so thresholding the same word at increasing p gives nested open sets.
inline double uniform_from_word(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

// Stream purposes; they key otherwise-identical counters apart.
inline constexpr std::uint64_t kStreamSites = 0x5349544553;    // per-site variates
inline constexpr std::uint64_t kStreamDerive = 0x444552495645; // derived sub-seeds

// The variate attached to (seed, trial, site). Sites are indexed in the
// canonical lexicographic ball order (lattice.hpp). Batch callers should
// use site_word_block and consume four sites per call.
std::uint64_t site_word(std::uint64_t seed, std::uint64_t trial, std::uint64_t site);
inline std::array<std::uint64_t, 4> site_word_block(std::uint64_t seed, std::uint64_t trial,
                                                    std::uint64_t block) {
  return philox4x64({trial, block, 0, 0}, {seed, kStreamSites});
}
inline double site_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t site) {
  return uniform_from_word(site_word(seed, trial, site));
}

// Independent sub-seed for sweep grid point / bisection step `index`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index);

inline constexpr std::uint64_t kPurposeSweep = 1;
inline constexpr std::uint64_t kPurposeBisection = 2;

}  // namespace percolab
