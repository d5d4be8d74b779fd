/*
 *   Copyright 2026 The siblt Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

#pragma once

#include <cstdint>
#include <limits>

namespace siblt {

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Child seed for (seed, index); used for per-trial seeds in experiments.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index + 0x243f6a8885a308d3ull));
}

// Counter-mode pseudorandom stream keyed by (seed, stream id). Word j of the
// stream depends only on (seed, stream, j), so streams never share state.
// Satisfies UniformRandomBitGenerator.
class SeedStream {
 public:
  using result_type = std::uint64_t;

  constexpr SeedStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(seed + 0x9e3779b97f4a7c15ull) ^ mix64(stream ^ 0xd1b54a32d192ed03ull)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return next_u64(); }

  constexpr std::uint64_t next_u64() noexcept {
    return mix64(key_ + 0x9e3779b97f4a7c15ull * ++counter_);
  }

  // Uniform in [0, bound) by rejection on the smallest covering power of two.
  constexpr std::uint64_t next_below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    std::uint64_t mask = covering_mask(bound - 1);
    for (;;) {
      std::uint64_t v = next_u64() & mask;
      if (v < bound) return v;
    }
  }

  constexpr unsigned __int128 next_u128() noexcept {
    unsigned __int128 hi = next_u64();
    return (hi << 64) | next_u64();
  }

  constexpr unsigned __int128 next_u128_below(unsigned __int128 bound) noexcept {
    if (bound <= 1) return 0;
    unsigned __int128 mask = covering_mask(bound - 1);
    for (;;) {
      unsigned __int128 v = next_u128() & mask;
      if (v < bound) return v;
    }
  }

  constexpr std::uint64_t position() const noexcept { return counter_; }

 private:
  template <class T>
  static constexpr T covering_mask(T x) noexcept {
    T mask = x;
    for (unsigned shift = 1; shift < sizeof(T) * 8; shift <<= 1) mask |= mask >> shift;
    return mask;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace siblt
