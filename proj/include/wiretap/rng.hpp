#pragma once

#include <cstdint>

namespace wiretap {

// SplitMix64 finalizer used as a stateless hash.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based draw for (seed, trial, slot).  Every random quantity is a
// pure function of its indices, so results do not depend on evaluation
// order or thread count.  Slot convention: position * 8 + stream id.
constexpr std::uint64_t counter_rand(std::uint64_t seed, std::uint64_t trial,
                                     std::uint64_t slot) noexcept {
  std::uint64_t key = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  key = mix64(key ^ (trial * 0x9e3779b97f4a7c15ULL));
  return mix64(key ^ (slot * 0xd1b54a32d192ed03ULL));
}

// Map a 64-bit draw to [0, 1) using the top 53 bits.
constexpr double to_unit(std::uint64_t r) noexcept {
  return static_cast<double>(r >> 11) * 0x1.0p-53;
}

}  // namespace wiretap
